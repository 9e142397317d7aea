#pragma once

// Dense exact linear algebra over CycNum.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dhecke/cyclo.hpp"
#include "dhecke/exec.hpp"

namespace dhecke {

using Vec = std::vector<CycNum>;

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::size_t rows, std::size_t cols, std::vector<CycNum> entries);
  static Mat identity(std::size_t n);
  static Mat from_rows(std::span<const Vec> rows, std::size_t cols);
  static Mat from_columns(std::span<const Vec> cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  CycNum& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycNum& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<CycNum> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const CycNum> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec column(std::size_t c) const;
  std::span<const CycNum> entries() const { return data_; }

  Mat transpose() const;
  bool is_zero() const;

  /// Coerces every entry to conductor m.
  Mat coerce(int m) const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const CycNum& s, const Mat& a);
  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CycNum> data_;
};

struct MatHash {
  std::size_t operator()(const Mat& m) const { return m.hash(); }
};

Vec operator*(const Mat& a, std::span<const CycNum> v);
CycNum dot(std::span<const CycNum> a, std::span<const CycNum> b);
bool is_zero_vec(std::span<const CycNum> v);

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form. Pivot choice is the first nonzero entry of the
/// leftmost remaining column, scanning rows top to bottom.
RrefResult rref(const Mat& m, Exec exec = Exec::serial);

std::size_t rank(const Mat& m);

/// Right null space, one vector per free column; the free coordinates of
/// the returned vectors form an identity pattern.
std::vector<Vec> kernel_basis(const Mat& m, Exec exec = Exec::serial);

/// Throws InputError for non-square input.
CycNum det(const Mat& m);

/// Throws std::domain_error if singular.
Mat inverse(const Mat& m);

/// Basis of the column space: nonzero rows of rref(m^T), i.e. the columns of
/// the column echelon form in pivot order.
std::vector<Vec> column_space_basis(const Mat& m);

/// Canonical basis (rref rows) of span(vectors).
std::vector<Vec> span_basis(std::span<const Vec> vectors, std::size_t dim);

/// Basis of span(a) ∩ span(b), both given as spanning sets in a space of
/// dimension dim.
std::vector<Vec> intersect_spans(std::span<const Vec> a, std::span<const Vec> b, std::size_t dim);

/// Solves m x = rhs; returns false if inconsistent. On success x holds one
/// solution (free variables set to zero).
bool solve(const Mat& m, std::span<const CycNum> rhs, Vec& x);

}  // namespace dhecke
