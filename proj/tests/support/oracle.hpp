#pragma once

// Independent reference computations used to validate the library.

#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dhecke/kappa_space.hpp"
#include "dhecke/pbw_engine.hpp"

namespace oracle {

using dhecke::AlgebraElement;
using dhecke::CycNum;
using dhecke::Group;
using dhecke::KappaMap;
using dhecke::Letter;

/// Free-algebra reduction: repeatedly rewrites the leftmost reducible spot
/// of some word (g h -> gh, g v -> g(v) g, v_j v_i -> v_i v_j + kappa) until
/// every word is an ordered monomial followed by at most one group letter.
AlgebraElement brute_normal_form(const Group& grp, const KappaMap& kappa,
                                 const std::vector<Letter>& word);

/// Dimension of the kappa space from the cyclic Jacobi condition
///   sum_cyc kappa_g(v_i, v_j) (v_k - g v_k) = 0   for every g,
/// together with invariance under every element of G.
std::size_t jacobi_kappa_dimension(const Group& grp);
/// Whether a particular kappa satisfies the same equations.
bool jacobi_conditions_hold(const Group& grp, const KappaMap& k);

/// Phi_m by dividing x^m - 1 by Phi_d for all proper divisors d.
std::vector<long long> cyclotomic_by_division(int m);

}  // namespace oracle

namespace testing_support {

using dhecke::AlgebraElement;
using dhecke::CycNum;
using dhecke::Group;

std::vector<std::string> corpus_files();
std::string corpus_path(const std::string& name);

struct Loaded {
  dhecke::Group grp;
  dhecke::ReflectionData refl;
};
Loaded load(const std::string& name);

/// Small random scalar: rational with numerator in [-5, 5] and denominator
/// in {1, 2, 3}, optionally plus a rational multiple of zeta_4.
CycNum random_scalar(std::mt19937& rng, bool allow_zeta = true);
dhecke::ParamPoint random_params(std::mt19937& rng, const dhecke::ReflectionData& refl);
/// Random element of degree <= max_deg with a few terms.
AlgebraElement random_element(std::mt19937& rng, const Group& grp, unsigned max_deg, std::size_t terms);

}  // namespace testing_support

namespace structural {

/// Product in S(V)*G computed with commutative polynomials:
/// (p g)(q h) = p g(q) gh.
dhecke::AlgebraElement skew_product(const dhecke::Group& grp, const dhecke::AlgebraElement& a,
                                    const dhecke::AlgebraElement& b);

/// Normal forms of every vector word of length <= d followed by a group
/// letter. count is the number of ordered basis elements reached; defect is
/// empty unless some term exceeds degree d, an ordered word is not its own
/// normal form, or a term falls outside the ordered basis.
struct BasisCount {
  std::size_t count = 0;
  std::string defect;
};
BasisCount pbw_basis_count(const dhecke::PbwEngine& engine, unsigned d);

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace structural
