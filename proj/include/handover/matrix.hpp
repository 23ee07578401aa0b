#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace handover {

using Vec = std::vector<double>;

// Dense row-major matrix of 64-bit reals.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) {
    return data[r * cols + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }

  bool same_shape(const Matrix& other) const {
    return rows == other.rows && cols == other.cols;
  }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

// y = A x
inline void matvec(const Matrix& a, const double* x, double* y) {
  const double* w = a.data.data();
  for (std::size_t r = 0; r < a.rows; ++r) {
    double acc = 0.0;
    const double* row = w + r * a.cols;
    for (std::size_t c = 0; c < a.cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

// y = A^T x  (accumulates into y, caller zeroes)
inline void matvec_transpose_add(const Matrix& a, const double* x, double* y) {
  const double* w = a.data.data();
  for (std::size_t r = 0; r < a.rows; ++r) {
    const double xr = x[r];
    const double* row = w + r * a.cols;
    for (std::size_t c = 0; c < a.cols; ++c) y[c] += row[c] * xr;
  }
}

// A += outer(u, v)
inline void add_outer(Matrix& a, const double* u, const double* v) {
  double* w = a.data.data();
  for (std::size_t r = 0; r < a.rows; ++r) {
    const double ur = u[r];
    double* row = w + r * a.cols;
    for (std::size_t c = 0; c < a.cols; ++c) row[c] += ur * v[c];
  }
}

inline bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace handover
