#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dhecke {

/// Maximum dim V supported by the packed monomial encoding.
inline constexpr std::size_t kMaxDim = 8;

/// Commutative monomial v_0^e_0 ... v_{n-1}^e_{n-1}, eight bits per exponent.
/// Read as an ordered (PBW) word it is v_0...v_0 v_1...v_1 ...
class Monomial {
 public:
  constexpr Monomial() = default;
  static constexpr Monomial from_bits(std::uint64_t bits) {
    Monomial m;
    m.bits_ = bits;
    return m;
  }
  static constexpr Monomial var(std::size_t i) { return from_bits(std::uint64_t{1} << (8 * i)); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr unsigned exponent(std::size_t i) const {
    return static_cast<unsigned>((bits_ >> (8 * i)) & 0xffu);
  }
  constexpr bool is_one() const { return bits_ == 0; }

  constexpr unsigned degree() const {
    unsigned d = 0;
    for (std::size_t i = 0; i < kMaxDim; ++i) d += exponent(i);
    return d;
  }

  /// Smallest variable index with nonzero exponent; kMaxDim for 1.
  constexpr std::size_t min_var() const {
    return bits_ == 0 ? kMaxDim : static_cast<std::size_t>(std::countr_zero(bits_) / 8);
  }
  /// Largest variable index with nonzero exponent; kMaxDim for 1.
  constexpr std::size_t max_var() const {
    return bits_ == 0 ? kMaxDim : static_cast<std::size_t>((63 - std::countl_zero(bits_)) / 8);
  }

  /// Exponent-wise sum. Exponents must stay below 256.
  friend constexpr Monomial operator*(Monomial a, Monomial b) { return from_bits(a.bits_ + b.bits_); }
  /// Exponent-wise difference; b must divide a.
  friend constexpr Monomial operator/(Monomial a, Monomial b) { return from_bits(a.bits_ - b.bits_); }
  constexpr bool divisible_by_var(std::size_t i) const { return exponent(i) > 0; }

  friend constexpr bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
  friend constexpr bool operator!=(Monomial a, Monomial b) { return a.bits_ != b.bits_; }

  /// Degree-lex order with v_0 < v_1 < ... : higher degree is larger, ties
  /// broken by comparing exponent vectors from the largest variable down.
  friend constexpr bool deglex_less(Monomial a, Monomial b) {
    const unsigned da = a.degree();
    const unsigned db = b.degree();
    if (da != db) return da < db;
    return a.bits_ < b.bits_;
  }

  std::string to_string(std::size_t dim) const;

 private:
  std::uint64_t bits_ = 0;
};

/// All monomials in `dim` variables of exactly degree d, in increasing
/// degree-lex order.
std::vector<Monomial> monomials_of_degree(std::size_t dim, unsigned d);

}  // namespace dhecke

template <>
struct std::hash<dhecke::Monomial> {
  std::size_t operator()(dhecke::Monomial m) const noexcept {
    return std::hash<std::uint64_t>{}(m.bits() * 0x9e3779b97f4a7c15ULL);
  }
};
