#include "dhecke/monomial.hpp"

#include <algorithm>

namespace dhecke {

std::string Monomial::to_string(std::size_t dim) const {
  if (is_one()) return "1";
  std::string out;
  for (std::size_t i = 0; i < dim; ++i) {
    const unsigned e = exponent(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += 'v' + std::to_string(i + 1);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

namespace {

void fill(std::size_t dim, std::size_t var, unsigned remaining, std::uint64_t bits,
          std::vector<Monomial>& out) {
  if (var + 1 == dim) {
    out.push_back(Monomial::from_bits(bits + (std::uint64_t{remaining} << (8 * var))));
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    fill(dim, var + 1, remaining - e, bits + (std::uint64_t{e} << (8 * var)), out);
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t dim, unsigned d) {
  std::vector<Monomial> out;
  if (dim == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  fill(dim, 0, d, 0, out);
  std::sort(out.begin(), out.end(), [](Monomial a, Monomial b) { return deglex_less(a, b); });
  return out;
}

}  // namespace dhecke
