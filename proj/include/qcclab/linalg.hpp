#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qcclab/dual.hpp"

// Minimal dense real matrix over a generic scalar. Dimensions here are tiny
// (at most 4n+3 = 11), so plain Gaussian elimination is all we need; a generic
// scalar keeps the solvers usable with nested dual numbers.

namespace qcc {

inline double dabs(const std::complex<double>& z) { return std::abs(z); }

template <class T>
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  Mat operator*(const Mat& o) const {
    if (cols != o.rows) throw std::invalid_argument("Mat: dimension mismatch");
    Mat out(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        const T& v = (*this)(i, k);
        for (std::size_t j = 0; j < o.cols; ++j) out(i, j) += v * o(k, j);
      }
    return out;
  }

  Mat& operator+=(const Mat& o) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
    return *this;
  }
  Mat operator+(Mat o) const { o += *this; return o; }
  Mat operator-(const Mat& o) const { Mat r = *this; r -= o; return r; }
  Mat operator*(double s) const {
    Mat out = *this;
    for (auto& v : out.a) v = v * s;
    return out;
  }

  Mat transpose() const {
    Mat out(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  double frobenius() const {
    double s = 0;
    for (const auto& v : a) { double d = dabs(v); s += d * d; }
    return std::sqrt(s);
  }
  double max_abs() const {
    double m = 0;
    for (const auto& v : a) m = std::max(m, dabs(v));
    return m;
  }
};

// Gaussian elimination with partial pivoting; pivots compared by |value|.
template <class T>
Mat<T> solve(Mat<T> A, Mat<T> B) {
  if (A.rows != A.cols || A.rows != B.rows) throw std::invalid_argument("solve: shape");
  std::size_t n = A.rows, m = B.cols;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (dabs(A(r, c)) > dabs(A(piv, c))) piv = r;
    if (dabs(A(piv, c)) < 1e-14) throw std::runtime_error("solve: singular matrix");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(c, j), A(piv, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(B(c, j), B(piv, j));
    }
    T inv = T(1) / A(c, c);
    for (std::size_t j = 0; j < n; ++j) A(c, j) *= inv;
    for (std::size_t j = 0; j < m; ++j) B(c, j) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      T factor = A(r, c);
      if (dabs(factor) == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) A(r, j) -= factor * A(c, j);
      for (std::size_t j = 0; j < m; ++j) B(r, j) -= factor * B(c, j);
    }
  }
  return B;
}

template <class T>
Mat<T> inverse(const Mat<T>& A) {
  return solve(A, Mat<T>::identity(A.rows));
}

// Eigenvalues of a symmetric real matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(Mat<double> A) {
  std::size_t n = A.rows;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
    if (off < 1e-28) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(A(p, q)) < 1e-300) continue;
        double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = A(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace qcc
