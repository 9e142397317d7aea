#pragma once

// Normal-form arithmetic in A = T(V)*G / ([v, w] - kappa(v, w)).
//
// Elements are written in the PBW basis: ordered monomials in v_0 < ... <
// v_{n-1} followed by a group element on the right. Reduction uses
//   (R1) g v_i     -> sum_j g_{ji} v_j g
//   (R2) v_j v_i   -> v_i v_j + kappa(v_j, v_i)   for j > i
// applied to linear combinations, with memoized straightening of
// v_k * monomial, g * monomial and monomial * monomial.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dhecke/exec.hpp"
#include "dhecke/kappa_space.hpp"
#include "dhecke/monomial.hpp"

namespace dhecke {

struct TermKey {
  Monomial mono;
  std::uint32_t group = 0;

  friend bool operator==(const TermKey& a, const TermKey& b) {
    return a.mono == b.mono && a.group == b.group;
  }
};

struct TermKeyHash {
  std::size_t operator()(const TermKey& k) const noexcept {
    return std::hash<Monomial>{}(k.mono) ^ (std::size_t{k.group} * 0xc2b2ae3d27d4eb4fULL);
  }
};

/// Finitely supported sum of coeff * v^e * g. Never stores zero coefficients.
class AlgebraElement {
 public:
  using Map = std::unordered_map<TermKey, CycNum, TermKeyHash>;

  AlgebraElement() = default;
  static AlgebraElement one() { return term(Monomial(), 0, CycNum(1)); }
  static AlgebraElement term(Monomial m, std::uint32_t g, CycNum coeff);
  static AlgebraElement group_element(std::uint32_t g) { return term(Monomial(), g, CycNum(1)); }

  void add(Monomial m, std::uint32_t g, const CycNum& coeff);
  /// Adds a * b to the coefficient of (m, g).
  void add_product(Monomial m, std::uint32_t g, const CycNum& a, const CycNum& b);

  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  CycNum coeff(Monomial m, std::uint32_t g) const;

  /// Max |e| over the support; -1 for zero.
  int degree() const;
  AlgebraElement homogeneous_component(unsigned d) const;
  /// Sum of the group coefficients of each monomial, placed on the identity:
  /// x * e = collapse(x) * e for the symmetrizing idempotent e.
  AlgebraElement collapse_group() const;
  /// True when every term has group index 0.
  bool group_free() const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(const CycNum& s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const CycNum& s, AlgebraElement a) { return a *= s; }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

  struct Term {
    Monomial mono;
    std::uint32_t group;
    CycNum coeff;
  };
  /// Terms sorted leading-first: degree-lex descending, then group index.
  std::vector<Term> sorted_terms() const;
  std::string to_string(std::size_t dim) const;

 private:
  Map terms_;
};

struct Letter {
  enum class Kind : std::uint8_t { vector, group };
  Kind kind = Kind::vector;
  std::size_t index = 0;

  static Letter v(std::size_t i) { return {Kind::vector, i}; }
  static Letter g(std::size_t i) { return {Kind::group, i}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

std::string word_to_string(std::span<const Letter> word);

class PbwEngine {
 public:
  /// The group must outlive the engine.
  PbwEngine(const Group& grp, KappaMap kappa);
  ~PbwEngine();
  PbwEngine(const PbwEngine&) = delete;
  PbwEngine& operator=(const PbwEngine&) = delete;

  const Group& group() const { return *grp_; }
  const KappaMap& kappa() const { return kappa_; }
  std::size_t dim() const { return grp_->dim; }

  AlgebraElement normal_form(std::span<const Letter> word) const;
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement left_mul_vector(std::size_t k, const AlgebraElement& x) const;
  AlgebraElement left_mul_group(std::size_t g, const AlgebraElement& x) const;
  AlgebraElement right_mul_group(const AlgebraElement& x, std::size_t g) const;

  /// NF(a * b) for ordered monomials a, b (group part trivial).
  const AlgebraElement& monomial_product(Monomial a, Monomial b) const;
  /// NF(g * m) for an ordered monomial m.
  const AlgebraElement& group_times_monomial(std::size_t g, Monomial m) const;
  /// NF(v_k * m) for an ordered monomial m.
  const AlgebraElement& var_times_monomial(std::size_t k, Monomial m) const;

  std::size_t cache_entries() const;

 private:
  struct Caches;

  // out += scale * NF(v_k * m) * h
  void accumulate_var_times(AlgebraElement& out, std::size_t k, Monomial m, std::uint32_t h,
                            const CycNum& scale) const;
  void accumulate_right(AlgebraElement& out, const AlgebraElement& x, std::uint32_t h,
                        const CycNum& scale) const;

  AlgebraElement compute_var_times(std::size_t k, Monomial m) const;
  AlgebraElement compute_group_times(std::size_t g, Monomial m) const;
  AlgebraElement compute_monomial_product(Monomial a, Monomial b) const;

  const Group* grp_;
  KappaMap kappa_;
  // kappa(v_j, v_i) for j > i as (group index, coefficient) lists.
  std::vector<std::vector<std::pair<std::uint32_t, CycNum>>> lowering_;
  std::unique_ptr<Caches> caches_;
};

struct OverlapWitness {
  std::string kind;  // "vvv" or "gvv"
  std::vector<Letter> word;
  AlgebraElement discrepancy;  // left-first reduction minus right-first reduction
};

struct PbwCheckResult {
  bool pass = true;
  std::size_t overlaps_checked = 0;
  std::optional<OverlapWitness> witness;  // first failing overlap in enumeration order
};

/// Resolves every ambiguity v_k v_j v_i (k > j > i) and g v_j v_i (g a
/// generator, j > i) along both one-step reductions.
PbwCheckResult pbw_overlap_check(const PbwEngine& engine, Exec exec = Exec::serial);

struct ScalingCheckResult {
  bool pass = true;
  std::size_t words_checked = 0;
  std::vector<Letter> failing_word;
};

/// For lambda = mu^2, checks NF_kappa(phi(w)) = phi(NF_{lambda kappa}(w)) on
/// all words of degree <= max_degree, where phi(v_i) = mu v_i and phi(g) = g
/// is the isomorphism A_{lambda kappa} -> A_kappa.
/// Throws InputError when mu = 0.
ScalingCheckResult scaling_check(const Group& grp, const KappaMap& kappa, const CycNum& mu,
                                 unsigned max_degree = 3);

/// Every word in the vector letters of length <= max_len, plus each of them
/// with one generator letter inserted at every position.
std::vector<std::vector<Letter>> probe_words(const Group& grp, unsigned max_len);

}  // namespace dhecke
