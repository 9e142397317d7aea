#pragma once

// Probes of the spherical subalgebra eAe: commutators of invariant lifts,
// the degree -2 Poisson bracket on S(V)^G, the regular-trace identity and a
// scan over parameter grids.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dhecke/exec.hpp"
#include "dhecke/kappa_space.hpp"
#include "dhecke/pbw_engine.hpp"
#include "dhecke/poly.hpp"

namespace dhecke {

inline constexpr unsigned kDefaultProbeDegree = 4;

/// e = (1/|G|) sum_g g
AlgebraElement symmetrizer(const Group& grp);

/// Echelon basis of S^d(V)^G obtained from Reynolds averages of monomials.
std::vector<Poly> invariant_basis(const Group& grp, unsigned d);

/// Ordered-monomial lift of a commutative polynomial.
AlgebraElement pbw_lift(const Poly& p);

/// Group-free part of x, read as a commutative polynomial. Throws
/// InternalError if x has terms with nontrivial group part.
Poly as_poly(const AlgebraElement& x);

/// (1/|G|) sum_g g x g^{-1}; commutes with every group element.
AlgebraElement conjugation_average(const PbwEngine& engine, const AlgebraElement& x);

/// collapse(p^ q^ - q^ p^) with p^, q^ the conjugation averages of the
/// lifts. [epe, eqe] = (p^ q^ - q^ p^) e, and x e = 0 iff collapse(x) = 0.
AlgebraElement spherical_commutator(const PbwEngine& engine, const Poly& p, const Poly& q);

/// NF(epe eqe - eqe epe) computed literally with the full symmetrizer.
AlgebraElement spherical_commutator_direct(const PbwEngine& engine, const Poly& p, const Poly& q);

struct InvariantPair {
  Poly p;
  Poly q;
  unsigned deg_p = 0;
  unsigned deg_q = 0;
  unsigned witness_degree() const { return std::max(deg_p, deg_q); }
};

/// Pairs of distinct basis invariants of positive degree <= D, ordered by
/// total degree, then by position in the per-degree bases.
std::vector<InvariantPair> invariant_pairs(const Group& grp, unsigned D);

struct CommutatorVerdict {
  bool commutative = true;  // commutative_up_to_D
  unsigned degree_bound = 0;
  std::size_t pairs_checked = 0;
  std::optional<InvariantPair> witness;
  AlgebraElement commutator;  // collapse(p^ q^ - q^ p^)
  bool witness_reverified = false;

  std::string label() const { return commutative ? "commutative_up_to_D" : "noncommutative"; }
};

/// First noncommuting invariant pair in invariant_pairs order. A witness is
/// re-verified through spherical_commutator_direct.
CommutatorVerdict spherical_commutator_probe(const PbwEngine& engine, unsigned D,
                                             Exec exec = Exec::serial);

struct BracketResult {
  Poly bracket;             // degree a + b - 2 component
  bool degree_ok = true;    // nothing above degree a + b - 2
  bool group_free = true;   // that component has no group terms before collapsing
};

/// Top component of collapse(NF(p q - q p)) for homogeneous p, q of
/// degrees a, b, read in degree a + b - 2.
BracketResult poisson_bracket(const PbwEngine& engine, const Poly& p, const Poly& q);

/// sum_{i,j} omega(v_i, v_j) d_i p d_j q
Poly leibniz_bracket(const SkewForm& omega, const Poly& p, const Poly& q);

/// Omega = sum_i t_i b_i
SkewForm t_form(const ReflectionData& refl, std::size_t dim, const ParamPoint& params);

struct PoissonReport {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::optional<InvariantPair> mismatch;
  Poly engine_bracket;
  Poly leibniz;
  std::string detail;
};

/// Compares poisson_bracket with leibniz_bracket(t_form) on all invariant
/// pairs with degrees <= D.
PoissonReport poisson_crosscheck(const PbwEngine& engine, const ReflectionData& refl,
                                 const ParamPoint& params, unsigned D, Exec exec = Exec::serial);

struct TraceReport {
  bool pass = true;
  std::vector<std::string> failures;  // "i,j"
};

/// Regular trace |G| * coeff_id(kappa(v_i, v_j)) against |G| * Omega(v_i, v_j).
TraceReport trace_identity_check(const Group& grp, const KappaMap& kappa, const ReflectionData& refl,
                                 const ParamPoint& params);

struct ScanRow {
  ParamPoint params;
  std::string key;
  bool t_zero = true;
  CommutatorVerdict verdict;
  /// Witness found iff t != 0; a t != 0 row without witness is only
  /// inconclusive.
  bool consistent = true;
  bool degree_insufficient = false;
};

/// One probe per point, rows sorted by ParamPoint::key.
std::vector<ScanRow> dichotomy_scan(const Group& grp, const ReflectionData& refl,
                                    std::span<const ParamPoint> grid, unsigned D,
                                    Exec exec = Exec::serial);

}  // namespace dhecke
