#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_m).
//
// Elements are stored in the power basis {zeta_m^k : 0 <= k < phi(m)}
// reduced modulo the m-th cyclotomic polynomial, so equal elements of the
// same conductor have identical coefficient vectors. Mixed-conductor
// arithmetic embeds both operands into Q(zeta_lcm).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dhecke {

using Rational = mpq_class;

/// Euler's totient.
int euler_phi(int m);

/// Coefficients of Phi_m, lowest degree first. Throws InputError for m < 1.
std::vector<long long> cyclotomic_polynomial(int m);

/// Largest conductor that mixed-conductor coercion may produce.
int conductor_cap();
void set_conductor_cap(int cap);

class CycNum {
 public:
  CycNum();
  CycNum(long long value);  // NOLINT(google-explicit-constructor)
  explicit CycNum(Rational value, int conductor = 1);

  /// zeta_m^k, any integer k.
  static CycNum zeta(int m, long long k = 1);

  /// Element sum_k coeffs[k] * zeta_m^k; coeffs may be longer than phi(m).
  static CycNum from_coeffs(int m, std::vector<Rational> coeffs);

  int conductor() const { return conductor_; }
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Only valid when is_rational().
  const Rational& rational() const;

  /// Embed into Q(zeta_m); m must be a multiple of conductor().
  CycNum coerce(int m) const;

  CycNum inverse() const;

  CycNum& operator+=(const CycNum& rhs);
  CycNum& operator-=(const CycNum& rhs);
  CycNum& operator*=(const CycNum& rhs);
  CycNum& operator/=(const CycNum& rhs);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
  CycNum operator-() const;

  /// Adds a * b into *this without a temporary for the common rational case.
  void add_product(const CycNum& a, const CycNum& b);

  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  /// Hash of the canonical form. Only consistent between equal-conductor values.
  std::size_t hash() const;

  /// Human-readable expression, e.g. "1/2 - 3*z4".
  std::string to_string() const;
  /// Power-basis coefficients as "p/q" strings, length phi(conductor()).
  std::vector<std::string> to_coeff_strings() const;

 private:
  void reduce();
  void unify_with(CycNum& other);

  int conductor_ = 1;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycNum& x);

/// Parses a scalar literal. Accepted grammar:
///   expr   := term (('+' | '-') term)*
///   term   := ['-'] factor ('*' factor)*
///   factor := rational | 'z' M ['^' K] | '(' expr ')'
/// where rational is "p" or "p/q" and zM denotes zeta_M. The result is
/// coerced to at least `conductor`.
CycNum parse_scalar(std::string_view text, int conductor = 1);

/// Builds an element from power-basis coefficient strings (each "p/q").
/// The list may have any length; it is reduced modulo Phi_m.
CycNum cyc_from_strings(int m, std::span<const std::string> coeffs);

int lcm_conductor(int a, int b);

}  // namespace dhecke
