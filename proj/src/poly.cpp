#include "dhecke/poly.hpp"

#include <algorithm>

#include "dhecke/error.hpp"

namespace dhecke {

Poly Poly::monomial(Monomial m, CycNum c) {
  Poly p;
  p.add(m, c);
  return p;
}

void Poly::add(Monomial m, const CycNum& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

CycNum Poly::coeff(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? CycNum() : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
  return d;
}

bool Poly::is_homogeneous() const {
  const int d = degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return static_cast<int>(t.first.degree()) == d; });
}

Poly Poly::derivative(std::size_t i) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    const unsigned e = m.exponent(i);
    if (e == 0) continue;
    out.add(m / Monomial::var(i), c * CycNum(static_cast<long long>(e)));
  }
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add(m, -c);
  return *this;
}

Poly& Poly::operator*=(const CycNum& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add(ma * mb, ca * cb);
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (const auto& [m, c] : a.terms_) {
    auto it = b.terms_.find(m);
    if (it == b.terms_.end() || !(it->second == c)) return false;
  }
  return true;
}

std::vector<std::pair<Monomial, CycNum>> Poly::sorted_terms() const {
  std::vector<std::pair<Monomial, CycNum>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return deglex_less(y.first, x.first); });
  return out;
}

std::string Poly::to_string(std::size_t dim) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : sorted_terms()) {
    if (!out.empty()) out += " + ";
    out += '(' + c.to_string() + ')';
    if (!m.is_one()) out += '*' + m.to_string(dim);
  }
  return out;
}

Poly act(const Mat& g, const Poly& p) {
  const std::size_t n = g.rows();
  std::vector<Poly> images(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < n; ++a) images[i].add(Monomial::var(a), g(a, i));
  }
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Poly term = Poly::monomial(Monomial(), c);
    for (std::size_t i = 0; i < n; ++i) {
      for (unsigned e = 0; e < m.exponent(i); ++e) term = term * images[i];
    }
    out += term;
  }
  return out;
}

Vec coordinates(const Poly& p, std::size_t dim, unsigned d) {
  const auto monos = monomials_of_degree(dim, d);
  Vec out(monos.size());
  std::size_t found = 0;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    out[k] = p.coeff(monos[k]);
    if (!out[k].is_zero()) ++found;
  }
  if (found != p.terms().size()) throw InternalError("polynomial is not homogeneous of the given degree");
  return out;
}

Poly from_coordinates(std::span<const CycNum> coords, std::size_t dim, unsigned d) {
  const auto monos = monomials_of_degree(dim, d);
  Poly out;
  for (std::size_t k = 0; k < monos.size(); ++k) out.add(monos[k], coords[k]);
  return out;
}

}  // namespace dhecke
