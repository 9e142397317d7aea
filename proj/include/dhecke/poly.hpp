#pragma once

// Commutative polynomials in S(V) with the linear substitution action of
// GL(V).

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "dhecke/linalg.hpp"
#include "dhecke/monomial.hpp"

namespace dhecke {

class Poly {
 public:
  using Map = std::unordered_map<Monomial, CycNum>;

  Poly() = default;
  static Poly monomial(Monomial m, CycNum c = CycNum(1));

  void add(Monomial m, const CycNum& c);
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  CycNum coeff(Monomial m) const;
  int degree() const;
  bool is_homogeneous() const;

  /// d/dv_i
  Poly derivative(std::size_t i) const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const CycNum& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const CycNum& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Terms in decreasing degree-lex order.
  std::vector<std::pair<Monomial, CycNum>> sorted_terms() const;
  std::string to_string(std::size_t dim) const;

 private:
  Map terms_;
};

/// g acting as the algebra automorphism with v_i -> sum_a g_{ai} v_a.
Poly act(const Mat& g, const Poly& p);

/// Coordinates of a homogeneous polynomial against monomials_of_degree(dim, d).
Vec coordinates(const Poly& p, std::size_t dim, unsigned d);
Poly from_coordinates(std::span<const CycNum> coords, std::size_t dim, unsigned d);

}  // namespace dhecke
