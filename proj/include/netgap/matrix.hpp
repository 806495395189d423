#pragma once

/// @file matrix.hpp
/// @brief Dense matrices over a Field and exact Gaussian elimination.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netgap/field.hpp"

namespace netgap {

class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<FieldElement> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("entry count does not match shape");
    for (auto e : data_)
      if (!field_.contains(e)) throw std::invalid_argument("entry " + std::to_string(e) + " not in " + field_.describe());
  }

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Row i of the n x n identity.
  static Matrix unit_row(const Field& f, std::size_t n, std::size_t i) {
    Matrix m(f, 1, n);
    m(0, i) = 1;
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  FieldElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElement operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<FieldElement> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const FieldElement> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<FieldElement>& entries() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](FieldElement e) { return e == 0; });
  }

  Matrix transpose() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block outside matrix");
    Matrix out(field_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
  }

  Matrix rows_range(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, cols_); }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("block outside matrix");
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.add(data_[i], o.data_[i]);
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.sub(data_[i], o.data_[i]);
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_)) throw std::invalid_argument("field mismatch");
    if (a.cols_ != b.rows_) throw std::invalid_argument("inner dimensions differ");
    const Field& f = a.field_;
    Matrix out(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const FieldElement aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
      }
    return out;
  }

  Matrix scaled(FieldElement s) const {
    Matrix out = *this;
    for (auto& e : out.data_) e = field_.mul(e, s);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

  /// Lexicographic order on (shape, row-major entries).
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

  void check_same_shape(const Matrix& o) const {
    if (!(field_ == o.field_)) throw std::invalid_argument("field mismatch");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> data_;
};

/// Stacks matrices vertically; all must share cols and field.
inline Matrix vstack(std::span<const Matrix> parts) {
  if (parts.empty()) throw std::invalid_argument("vstack of nothing");
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != parts[0].cols() || !(p.field() == parts[0].field()))
      throw std::invalid_argument("vstack: incompatible parts");
    rows += p.rows();
  }
  Matrix out(parts[0].field(), rows, parts[0].cols());
  std::size_t r = 0;
  for (const auto& p : parts) {
    out.set_block(r, 0, p);
    r += p.rows();
  }
  return out;
}

inline Matrix vstack(std::initializer_list<Matrix> parts) {
  return vstack(std::span<const Matrix>(parts.begin(), parts.size()));
}

inline Matrix hstack(std::span<const Matrix> parts) {
  if (parts.empty()) throw std::invalid_argument("hstack of nothing");
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != parts[0].rows() || !(p.field() == parts[0].field()))
      throw std::invalid_argument("hstack: incompatible parts");
    cols += p.cols();
  }
  Matrix out(parts[0].field(), parts[0].rows(), cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    out.set_block(0, c, p);
    c += p.cols();
  }
  return out;
}

inline Matrix hstack(std::initializer_list<Matrix> parts) {
  return hstack(std::span<const Matrix>(parts.begin(), parts.size()));
}

/// Square-matrix power, e >= 0.
inline Matrix matrix_pow(Matrix base, std::uint64_t e) {
  if (base.rows() != base.cols()) throw std::invalid_argument("power of non-square matrix");
  Matrix result = Matrix::identity(base.field(), base.rows());
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

namespace detail {

/// In-place reduction to RREF restricted to the first @p ncols columns;
/// returns pivot columns.
inline std::vector<std::size_t> reduce_in_place(Matrix& a, std::size_t ncols, bool full = true) {
  const Field& f = a.field();
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < ncols && prow < a.rows(); ++c) {
    std::size_t sel = prow;
    while (sel < a.rows() && a(sel, c) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != prow)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(prow, j));
    const FieldElement piv = a(prow, c);
    if (piv != 1) {
      const FieldElement s = f.inv(piv);
      for (std::size_t j = c; j < a.cols(); ++j) a(prow, j) = f.mul(a(prow, j), s);
    }
    for (std::size_t r = full ? 0 : prow + 1; r < a.rows(); ++r) {
      if (r == prow) continue;
      const FieldElement factor = a(r, c);
      if (factor == 0) continue;
      for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.sub(a(r, j), f.mul(factor, a(prow, j)));
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

}  // namespace detail

/// Rank by forward elimination.
inline std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return detail::reduce_in_place(work, work.cols(), false).size();
}

/// Unique reduced row echelon form and its (strictly increasing) pivot columns.
inline RrefResult rref(const Matrix& m) {
  Matrix work = m;
  auto pivots = detail::reduce_in_place(work, work.cols());
  return {std::move(work), std::move(pivots)};
}

/// Some X with A X = B, or nullopt when the system is inconsistent. Free
/// variables are set to zero.
inline std::optional<Matrix> solve_particular(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row counts differ");
  Matrix aug = hstack({a, b});
  auto pivots = detail::reduce_in_place(aug, a.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    for (std::size_t j = a.cols(); j < aug.cols(); ++j)
      if (aug(r, j) != 0) return std::nullopt;
  Matrix x(a.field(), a.cols(), b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[i], j) = aug(i, a.cols() + j);
  return x;
}

/// The unique solution of A x = b for a system with full column rank
/// (square invertible A in particular).
inline Matrix solve_linear(const Matrix& a, const Matrix& b) {
  if (rank(a) != a.cols()) throw std::domain_error("solve_linear: matrix does not have full column rank");
  auto x = solve_particular(a, b);
  if (!x) throw std::domain_error("solve_linear: inconsistent system");
  return *x;
}

/// Basis (as rows) of the right kernel {x : M x = 0}.
inline Matrix nullspace(const Matrix& m) {
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  const Field& f = m.field();
  Matrix basis(f, m.cols() - pivots.size(), m.cols());
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(k, free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(k, pivots[i]) = f.neg(r(i, free));
    ++k;
  }
  return basis;
}

/// Returns k rows that, stacked under M, raise the rank to min(rank(M)+k, target).
/// The rows are standard-basis vectors for the non-pivot coordinates of rref(M),
/// lowest index first, padded with zero rows when fewer are needed.
inline Matrix complete_to_full_rank(const Matrix& m, std::size_t k, std::optional<std::size_t> target = std::nullopt) {
  const std::size_t n = m.cols();
  const std::size_t want = target.value_or(n);
  if (want > n) throw std::invalid_argument("target rank exceeds column count");
  auto [r, pivots] = rref(m);
  const std::size_t rho = pivots.size();
  if (rho + k < want)
    throw std::domain_error("cannot complete rank " + std::to_string(rho) + " to " + std::to_string(want) + " with " +
                            std::to_string(k) + " rows");
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix out(m.field(), k, n);
  std::size_t added = 0;
  const std::size_t needed = want > rho ? want - rho : 0;
  for (std::size_t c = 0; c < n && added < needed; ++c) {
    if (is_pivot[c]) continue;
    out(added++, c) = 1;
  }
  return out;
}

}  // namespace netgap
