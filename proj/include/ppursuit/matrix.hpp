#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ppursuit/error.hpp"

namespace ppursuit {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Rows are samples, columns are features,
// unless a function documents otherwise.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) {
      throw Error(ExitCode::dimension, "matrix dimensions must be positive");
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  const std::vector<double>& storage() const noexcept { return data_; }

  bool all_finite() const {
    for (double v : data_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline void require_finite(const Matrix& m, const std::string& what) {
  if (!m.all_finite()) {
    throw Error(ExitCode::dimension, what + " contains a non-finite value");
  }
}

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline void scale(Vector& a, double c) {
  for (double& v : a) v *= c;
}

// a += c * b
inline void axpy(Vector& a, double c, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

inline Vector normalized(Vector a) {
  double n = norm2(a);
  if (n == 0.0 || !std::isfinite(n)) {
    throw Error(ExitCode::dimension, "cannot normalize a zero or non-finite vector");
  }
  scale(a, 1.0 / n);
  return a;
}

// y = M * x  (M is r x c, x has length c)
inline Vector matvec(const Matrix& m, const Vector& x) {
  if (x.size() != m.cols()) {
    throw Error(ExitCode::dimension, "matvec: vector length does not match matrix columns");
  }
  Vector y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* r = m.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

// y = M^T * x  (x has length rows; result length cols)
inline Vector matvec_transpose(const Matrix& m, const Vector& x) {
  if (x.size() != m.rows()) {
    throw Error(ExitCode::dimension, "matvec_transpose: vector length does not match matrix rows");
  }
  Vector y(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* r = m.row(i);
    const double xi = x[i];
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += r[j] * xi;
  }
  return y;
}

// C = A * B
inline Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ExitCode::dimension, "matmul: inner dimensions do not match");
  }
  Matrix c(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ra = a.row(i);
    double* rc = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = ra[k];
      if (aik == 0.0) continue;
      const double* rb = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) rc[j] += aik * rb[j];
    }
  }
  return c;
}

inline Matrix transposed(const Matrix& m) {
  Matrix t(m.cols(), m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  }
  return t;
}

}  // namespace ppursuit
