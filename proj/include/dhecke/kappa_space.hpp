#pragma once

// The space of deformation maps kappa: V x V -> CG, computed from the
// parameter formula and, independently, from the linear PBW constraints.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dhecke/exec.hpp"
#include "dhecke/refl_data.hpp"

namespace dhecke {

/// kappa(v_i, v_j) in CG for i < j; extended by skew-symmetry.
class KappaMap {
 public:
  KappaMap() = default;
  KappaMap(std::size_t dim, std::size_t group_order);

  std::size_t dim() const { return dim_; }
  std::size_t group_order() const { return order_; }
  std::size_t num_pairs() const { return dim_ * (dim_ - (dim_ > 0 ? 1 : 0)) / 2; }

  static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t dim);

  /// Coefficient of group element g in kappa(v_i, v_j), any i, j.
  CycNum coeff(std::size_t i, std::size_t j, std::size_t g) const;
  /// Requires i < j.
  void set(std::size_t i, std::size_t j, std::size_t g, CycNum value);
  /// Nonzero (g, coefficient) pairs of kappa(v_i, v_j), any i, j.
  std::vector<std::pair<std::size_t, CycNum>> support(std::size_t i, std::size_t j) const;

  bool is_zero() const;
  /// Pair-major flattening: index pair_index * order + g.
  Vec flatten() const;
  static KappaMap from_flat(std::size_t dim, std::size_t group_order, std::span<const CycNum> flat);

  KappaMap& operator+=(const KappaMap& rhs);
  friend KappaMap operator*(const CycNum& s, const KappaMap& k);
  friend bool operator==(const KappaMap& a, const KappaMap& b);

 private:
  std::size_t dim_ = 0;
  std::size_t order_ = 0;
  std::vector<Vec> table_;  // [pair][g]
};

/// Parameters: t against the invariant-form basis, c per S'-class keyed by
/// the class representative's element index.
struct ParamPoint {
  std::vector<CycNum> t;
  std::map<std::size_t, CycNum> c;

  bool t_is_zero() const;
  std::string key() const;
};

/// kappa(v, w) = Omega(v, w) id + sum_s c_s Omega_s(v, w) s with Omega = sum t_i b_i.
/// Throws InputError on dimension mismatch or unknown class keys.
KappaMap kappa_from_params(const Group& grp, const ReflectionData& refl, const ParamPoint& p);

/// Assigns c_s per element instead of per class. Used to build kappas that
/// deliberately break conjugation invariance.
KappaMap kappa_from_element_values(const Group& grp, const ReflectionData& refl,
                                   std::span<const CycNum> t,
                                   const std::map<std::size_t, CycNum>& c_by_element);

/// Basis of the kappas given by the parameter formula: one per b_i, then
/// one per S'-class.
std::vector<KappaMap> theorem_kappa_basis(const Group& grp, const ReflectionData& refl);

/// Solution space of the G-invariance equations (for the generators) together
/// with id (x) kappa - kappa (x) id = 0 on (C (x) V) ∩ (V (x) C), where C is
/// the space of commutators in V (x) V.
std::vector<KappaMap> valid_kappa_basis(const Group& grp, Exec exec = Exec::serial);

/// Basis of (C (x) V) ∩ (V (x) C) inside V^{(x)3}, coordinates a*n*n + b*n + c.
std::vector<Vec> mixed_jacobi_domain(std::size_t dim);

bool is_g_invariant(const Group& grp, const KappaMap& k);

struct CrosscheckReport {
  bool pass = false;
  std::size_t dim_solution = 0;
  std::size_t dim_theorem = 0;
  std::size_t expected = 0;  // N + #classes
  bool spans_equal = false;
  bool support_ok = false;
  bool invariance_ok = false;
  std::string detail;
};

CrosscheckReport classification_crosscheck(const Group& grp, const ReflectionData& refl,
                                           std::span<const KappaMap> solution_basis);

/// Coordinates (t, c) of a kappa in the span of the theorem basis. Throws
/// InternalError if kappa is outside that span.
ParamPoint params_of(const Group& grp, const ReflectionData& refl, const KappaMap& k);

}  // namespace dhecke
