#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "necklace/error.hpp"
#include "necklace/rational.hpp"

namespace necklace {

// Dense exact linear algebra over Q. Sizes here stay small (a few hundred
// rows at most), so plain fraction-pivoted Gauss-Jordan is enough.
class Mat {
public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  Mat operator*(const Mat& o) const {
    require(cols_ == o.rows_, errc::bad_input, "matrix product shape mismatch");
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rat& x = (*this)(i, k);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, errc::bad_input, "matrix sum shape mismatch");
    Mat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  Mat operator-(const Mat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, errc::bad_input, "matrix diff shape mismatch");
    Mat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  Mat scaled(const Rat& c) const {
    Mat r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
  }

  Mat transposed() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_zero_mat() const {
    for (const auto& x : a_)
      if (!is_zero(x)) return false;
    return true;
  }

  // In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && is_zero((*this)(p, c))) ++p;
      if (p == rows_) continue;
      if (p != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      Rat inv = 1 / (*this)(r, c);
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || is_zero((*this)(i, c))) continue;
        Rat f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Mat m = *this;
    return m.rref().size();
  }

  // Basis of the right kernel {x : Ax = 0}, one column vector per basis element.
  std::vector<std::vector<Rat>> kernel_basis() const {
    Mat m = *this;
    auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (is_pivot[c]) continue;
      std::vector<Rat> v(cols_, Rat(0));
      v[c] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, c);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // Solves Ax = b; returns one solution or nothing when inconsistent.
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const {
    require(b.size() == rows_, errc::bad_input, "solve rhs size mismatch");
    Mat aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<Rat> x(cols_, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, cols_);
    return x;
  }

  std::optional<Mat> inverse() const {
    require(rows_ == cols_, errc::bad_input, "inverse of non-square matrix");
    Mat aug(rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = 1;
    }
    auto pivots = aug.rref();
    if (pivots.size() != rows_ || pivots.back() != rows_ - 1) return std::nullopt;
    Mat inv(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
    return inv;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

// Span membership with an explicit witness: target = sum coeff[i] * vecs[i].
inline std::optional<std::vector<Rat>> express_in_span(const std::vector<std::vector<Rat>>& vecs,
                                                       const std::vector<Rat>& target) {
  if (vecs.empty()) {
    for (const auto& x : target)
      if (!is_zero(x)) return std::nullopt;
    return std::vector<Rat>{};
  }
  Mat m(target.size(), vecs.size());
  for (std::size_t j = 0; j < vecs.size(); ++j) {
    require(vecs[j].size() == target.size(), errc::bad_input, "span vector size mismatch");
    for (std::size_t i = 0; i < target.size(); ++i) m(i, j) = vecs[j][i];
  }
  return m.solve(target);
}

inline std::size_t span_rank(const std::vector<std::vector<Rat>>& vecs) {
  if (vecs.empty()) return 0;
  Mat m(vecs.size(), vecs.front().size());
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < vecs[i].size(); ++j) m(i, j) = vecs[i][j];
  return m.rank();
}

}  // namespace necklace
