#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "qcclab/dual.hpp"
#include "qcclab/rng.hpp"

// Quaternion, quaternionic vector and quaternionic matrix algebra over a
// generic scalar, plus the unit-quaternion covering of SO(3).
//
// Component order is scalar-first {1, i, j, k} throughout the project, so a
// coordinate quadruple (x1, x2, x3, x4) reads x1 + i x2 + j x3 + k x4.

namespace qcc {

template <class T>
struct Quaternion {
  T w{}, x{}, y{}, z{};

  Quaternion() = default;
  Quaternion(T w_, T x_, T y_, T z_) : w(w_), x(x_), y(y_), z(z_) {}
  static Quaternion real(T v) { return {v, T{}, T{}, T{}}; }
  static Quaternion unit(int axis) {  // axis 0,1,2 -> i,j,k
    Quaternion q;
    if (axis == 0) q.x = T(1);
    else if (axis == 1) q.y = T(1);
    else q.z = T(1);
    return q;
  }
  // imaginary quaternion s1 i + s2 j + s3 k
  template <class S>
  static Quaternion imag(const std::array<S, 3>& s) {
    return {T{}, T(s[0]), T(s[1]), T(s[2])};
  }

  Quaternion conj() const { return {w, -x, -y, -z}; }
  T norm2() const { return w * w + x * x + y * y + z * z; }
  T norm() const { using std::sqrt; using qcc::sqrt; return sqrt(norm2()); }
  std::array<T, 3> im() const { return {x, y, z}; }

  Quaternion inverse() const {
    T n2 = norm2();
    return {w / n2, -x / n2, -y / n2, -z / n2};
  }

  Quaternion& operator+=(const Quaternion& o) { w += o.w; x += o.x; y += o.y; z += o.z; return *this; }
  Quaternion& operator-=(const Quaternion& o) { w -= o.w; x -= o.x; y -= o.y; z -= o.z; return *this; }
};

template <class T> Quaternion<T> operator+(Quaternion<T> a, const Quaternion<T>& b) { return a += b; }
template <class T> Quaternion<T> operator-(Quaternion<T> a, const Quaternion<T>& b) { return a -= b; }
template <class T> Quaternion<T> operator-(const Quaternion<T>& a) { return {-a.w, -a.x, -a.y, -a.z}; }

// Hamilton product: i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j.
template <class T>
Quaternion<T> operator*(const Quaternion<T>& a, const Quaternion<T>& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

template <class T, class S>
Quaternion<T> operator*(const Quaternion<T>& a, S s) {
  return {a.w * s, a.x * s, a.y * s, a.z * s};
}
template <class T, class S>
Quaternion<T> operator*(S s, const Quaternion<T>& a) {
  return a * s;
}

// exp(i_axis * theta) = cos(theta) + i_axis sin(theta)
template <class T>
Quaternion<T> axis_exp(int axis, const T& theta) {
  using std::cos; using std::sin; using qcc::cos; using qcc::sin;
  Quaternion<T> q = Quaternion<T>::unit(axis) * sin(theta);
  q.w = cos(theta);
  return q;
}

// ----------------------------------------------------------------------------
// Quaternionic n-vectors

template <class T>
struct QVector {
  std::vector<Quaternion<T>> e;

  QVector() = default;
  explicit QVector(std::size_t n) : e(n) {}

  std::size_t size() const { return e.size(); }
  Quaternion<T>& operator[](std::size_t k) { return e[k]; }
  const Quaternion<T>& operator[](std::size_t k) const { return e[k]; }

  T norm2() const {
    T s{};
    for (const auto& q : e) s += q.norm2();
    return s;
  }

  // entrywise right scalar multiplication z * q, matching the Sp(1) action
  QVector rmul(const Quaternion<T>& q) const {
    QVector out(size());
    for (std::size_t k = 0; k < size(); ++k) out.e[k] = e[k] * q;
    return out;
  }

  QVector& operator+=(const QVector& o) {
    for (std::size_t k = 0; k < size(); ++k) e[k] += o.e[k];
    return *this;
  }
  QVector& operator-=(const QVector& o) {
    for (std::size_t k = 0; k < size(); ++k) e[k] -= o.e[k];
    return *this;
  }

  QVector operator*(double s) const {
    QVector out(size());
    for (std::size_t k = 0; k < size(); ++k) out.e[k] = e[k] * s;
    return out;
  }

  // flat real coordinates (x_{4k-3},...,x_{4k}) per entry
  std::vector<T> flat() const {
    std::vector<T> out(4 * size());
    for (std::size_t k = 0; k < size(); ++k) {
      out[4 * k] = e[k].w;
      out[4 * k + 1] = e[k].x;
      out[4 * k + 2] = e[k].y;
      out[4 * k + 3] = e[k].z;
    }
    return out;
  }
  template <class Seq>
  static QVector from_flat(const Seq& v) {
    QVector out(v.size() / 4);
    for (std::size_t k = 0; k < out.size(); ++k)
      out.e[k] = {v[4 * k], v[4 * k + 1], v[4 * k + 2], v[4 * k + 3]};
    return out;
  }
};

template <class T> QVector<T> operator+(QVector<T> a, const QVector<T>& b) { return a += b; }
template <class T> QVector<T> operator-(QVector<T> a, const QVector<T>& b) { return a -= b; }

// Hermitian inner product <z,w> = sum conj(z_k) w_k
template <class T>
Quaternion<T> herm_inner(const QVector<T>& z, const QVector<T>& w) {
  if (z.size() != w.size()) throw std::invalid_argument("herm_inner: length mismatch");
  Quaternion<T> s;
  for (std::size_t k = 0; k < z.size(); ++k) s += z[k].conj() * w[k];
  return s;
}

// euclidean pairing <z,w>_R = Re<z,w>
template <class T>
T real_inner(const QVector<T>& z, const QVector<T>& w) {
  return herm_inner(z, w).w;
}

// ----------------------------------------------------------------------------
// Quaternionic n x n matrices, acting on QVector by left multiplication

template <class T>
struct QMatrix {
  std::size_t n = 0;
  std::vector<Quaternion<T>> a;  // row-major

  QMatrix() = default;
  explicit QMatrix(std::size_t n_) : n(n_), a(n_ * n_) {}

  static QMatrix identity(std::size_t n_) {
    QMatrix m(n_);
    for (std::size_t i = 0; i < n_; ++i) m(i, i) = Quaternion<T>::real(T(1));
    return m;
  }

  Quaternion<T>& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const Quaternion<T>& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  QVector<T> operator*(const QVector<T>& v) const {
    if (v.size() != n) throw std::invalid_argument("QMatrix: dimension mismatch");
    QVector<T> out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  QMatrix operator*(const QMatrix& o) const {
    QMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) out(i, j) += (*this)(i, k) * o(k, j);
    return out;
  }

  QMatrix conj_transpose() const {
    QMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = (*this)(j, i).conj();
    return out;
  }

  // max |(A* A - I)_{ij}| entrywise
  double symplectic_defect() const {
    QMatrix g = conj_transpose() * (*this);
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Quaternion<T> d = g(i, j);
        if (i == j) d.w -= T(1);
        worst = std::max({worst, dabs(d.w), dabs(d.x), dabs(d.y), dabs(d.z)});
      }
    return worst;
  }
};

// ----------------------------------------------------------------------------
// Unit quaternions and the covering Sp(1) -> SO(3)

struct UnitQuaternion {
  Quaternion<double> q;

  explicit UnitQuaternion(const Quaternion<double>& q_) : q(q_) {
    if (std::fabs(q.norm() - 1.0) >= 1e-12)
      throw std::invalid_argument("UnitQuaternion: |q| != 1");
  }
  static UnitQuaternion normalized(Quaternion<double> q_) {
    double n = q_.norm();
    if (n < 1e-300) throw std::invalid_argument("UnitQuaternion: zero quaternion");
    return UnitQuaternion(q_ * (1.0 / n));
  }
};

// Rows a_{bg} defined by alpha i_b conj(alpha) = sum_g a_{bg} i_g.
inline std::array<std::array<double, 3>, 3> so3_from_unit(const UnitQuaternion& alpha) {
  std::array<std::array<double, 3>, 3> m;
  for (int b = 0; b < 3; ++b) {
    Quaternion<double> r = alpha.q * Quaternion<double>::unit(b) * alpha.q.conj();
    m[b] = {r.x, r.y, r.z};
  }
  return m;
}

inline Quaternion<double> random_quaternion(Rng& rng) {
  return {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
}

inline UnitQuaternion random_unit_quaternion(Rng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    Quaternion<double> q = random_quaternion(rng);
    if (q.norm() > 1e-6) return UnitQuaternion::normalized(q);
  }
  throw std::runtime_error("random_unit_quaternion: degenerate draws");
}

// Quaternionic Gram-Schmidt on columns with right scalar coefficients,
// consistent with the left action A z and right action z conj(alpha).
inline QMatrix<double> random_sp_n(Rng& rng, std::size_t n) {
  if (n < 1) throw std::invalid_argument("random_sp_n: n must be >= 1");
  for (int tries = 0; tries < 64; ++tries) {
    QMatrix<double> m(n);
    for (auto& q : m.a) q = random_quaternion(rng);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      // column j as a QVector
      QVector<double> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = m(i, j);
      for (std::size_t k = 0; k < j; ++k) {
        QVector<double> prev(n);
        for (std::size_t i = 0; i < n; ++i) prev[i] = m(i, k);
        Quaternion<double> c = herm_inner(prev, col);
        col -= prev.rmul(c);
      }
      double nrm = std::sqrt(col.norm2());
      if (nrm < 1e-8) { ok = false; break; }
      for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i] * (1.0 / nrm);
    }
    if (ok && m.symplectic_defect() < 1e-12) return m;
  }
  throw std::runtime_error("random_sp_n: degenerate draws");
}

inline QMatrix<double> random_sp_n(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  return random_sp_n(rng, n);
}

}  // namespace qcc
