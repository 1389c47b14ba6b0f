#pragma once

#include <Eigen/Dense>
#include <cassert>
#include <vector>

#include "operlab/scalar.hpp"

namespace operlab {

// Small dense matrix over an exact or floating scalar.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix operator+(const DenseMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    DenseMatrix r(*this);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
    return r;
  }
  DenseMatrix operator-(const DenseMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    DenseMatrix r(*this);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
    return r;
  }
  DenseMatrix& operator+=(const DenseMatrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  DenseMatrix operator*(const DenseMatrix& o) const {
    assert(cols_ == o.rows_);
    DenseMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }
  DenseMatrix scaled(const T& s) const {
    DenseMatrix r(*this);
    for (auto& x : r.data_) x *= s;
    return r;
  }
  std::vector<T> apply(const std::vector<T>& v) const {
    assert(v.size() == cols_);
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }
  bool operator==(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, magnitude(x));
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Eigen::MatrixXcd to_eigen(const DenseMatrix<T>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = to_cplx(m(i, j));
  return e;
}

// Reduced row echelon form in place; returns pivot columns. Exact for Rational.
template <class T>
std::vector<std::size_t> rref(DenseMatrix<T>& a, double tol = 0.0) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t best = a.rows();
    double bestmag = tol;
    for (std::size_t r = row; r < a.rows(); ++r) {
      const double mag = magnitude(a(r, col));
      if (is_zero(a(r, col), tol)) continue;
      if (best == a.rows() || mag > bestmag) {
        best = r;
        bestmag = mag;
      }
    }
    if (best == a.rows()) continue;
    if (best != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(best, c), a(row, c));
    const T inv = T(1) / a(row, col);
    for (std::size_t c = 0; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || is_zero(a(r, col), 0.0)) continue;
      const T f = a(r, col);
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace operlab
