#include "dhecke/linalg.hpp"

#include <sstream>
#include <stdexcept>

#include "dhecke/error.hpp"

namespace dhecke {

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<CycNum> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw InputError("matrix entry count does not match shape");
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(std::span<const Vec> rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InternalError("from_rows: ragged input");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Mat Mat::from_columns(std::span<const Vec> cols, std::size_t rows) {
  Mat m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw InternalError("from_columns: ragged input");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vec Mat::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool Mat::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Mat Mat::coerce(int m) const {
  Mat out = *this;
  for (auto& x : out.data_) x = x.coerce(m);
  return out;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw InternalError("matrix product: shape mismatch");
  Mat out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const CycNum& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j).add_product(aik, b(k, j));
    }
  }
  return out;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InternalError("matrix sum: shape mismatch");
  Mat out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InternalError("matrix difference: shape mismatch");
  Mat out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

Mat operator*(const CycNum& s, const Mat& a) {
  Mat out = a;
  for (auto& x : out.data_) x *= s;
  return out;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::size_t Mat::hash() const {
  std::size_t h = rows_ * 131 + cols_;
  for (const auto& x : data_) h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << (*this)(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Vec operator*(const Mat& a, std::span<const CycNum> v) {
  if (a.cols() != v.size()) throw InternalError("matrix-vector product: shape mismatch");
  Vec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!v[k].is_zero()) out[i].add_product(a(i, k), v[k]);
    }
  }
  return out;
}

CycNum dot(std::span<const CycNum> a, std::span<const CycNum> b) {
  CycNum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add_product(a[i], b[i]);
  return s;
}

bool is_zero_vec(std::span<const CycNum> v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

RrefResult rref(const Mat& m, Exec exec) {
  RrefResult res{m, {}, 0};
  Mat& a = res.reduced;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(piv, k), a(r, k));
    }
    const CycNum inv = a(r, c).inverse();
    for (std::size_t k = c; k < cols; ++k) a(r, k) *= inv;
    const auto n_rows = static_cast<long long>(rows);
    // Each row update reads only the pivot row, so rows are independent.
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel && rows > 32)
    for (long long i = 0; i < n_rows; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (ui == r || a(ui, c).is_zero()) continue;
      const CycNum f = a(ui, c);
      for (std::size_t k = c; k < cols; ++k) {
        if (!a(r, k).is_zero()) a(ui, k) -= f * a(r, k);
      }
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

std::size_t rank(const Mat& m) { return rref(m).rank; }

std::vector<Vec> kernel_basis(const Mat& m, Exec exec) {
  const RrefResult rr = rref(m, exec);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.reduced(i, f);
    basis.push_back(std::move(v));
  }
  if (rr.rank + basis.size() != cols) throw InternalError("rank-nullity violated");
  return basis;
}

CycNum det(const Mat& m) {
  if (!m.square()) throw InputError("det: matrix is not square");
  Mat a = m;
  const std::size_t n = a.rows();
  CycNum result = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) return CycNum(0);
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(piv, k), a(c, k));
      result = -result;
    }
    result *= a(c, c);
    const CycNum inv = a(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      const CycNum f = a(r, c) * inv;
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return result;
}

Mat inverse(const Mat& m) {
  if (!m.square()) throw InputError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  Mat aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const RrefResult rr = rref(aug);
  if (rr.rank < n || rr.pivots[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
  Mat inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = rr.reduced(r, n + c);
  }
  return inv;
}

std::vector<Vec> column_space_basis(const Mat& m) {
  const RrefResult rr = rref(m.transpose());
  std::vector<Vec> out;
  for (std::size_t r = 0; r < rr.rank; ++r) {
    auto row = rr.reduced.row(r);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

std::vector<Vec> span_basis(std::span<const Vec> vectors, std::size_t dim) {
  if (vectors.empty()) return {};
  const RrefResult rr = rref(Mat::from_rows(vectors, dim));
  std::vector<Vec> out;
  for (std::size_t r = 0; r < rr.rank; ++r) {
    auto row = rr.reduced.row(r);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

std::vector<Vec> intersect_spans(std::span<const Vec> a, std::span<const Vec> b, std::size_t dim) {
  if (a.empty() || b.empty()) return {};
  // Solve sum x_i a_i - sum y_j b_j = 0; each solution gives sum x_i a_i.
  Mat sys(dim, a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t r = 0; r < dim; ++r) sys(r, i) = a[i][r];
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t r = 0; r < dim; ++r) sys(r, a.size() + j) = -b[j][r];
  }
  std::vector<Vec> images;
  for (const Vec& k : kernel_basis(sys)) {
    Vec v(dim);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (k[i].is_zero()) continue;
      for (std::size_t r = 0; r < dim; ++r) v[r].add_product(k[i], a[i][r]);
    }
    images.push_back(std::move(v));
  }
  return span_basis(images, dim);
}

bool solve(const Mat& m, std::span<const CycNum> rhs, Vec& x) {
  if (rhs.size() != m.rows()) throw InternalError("solve: rhs length mismatch");
  Mat aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  const RrefResult rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return false;
  x.assign(m.cols(), CycNum());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) x[rr.pivots[i]] = rr.reduced(i, m.cols());
  return true;
}

}  // namespace dhecke
