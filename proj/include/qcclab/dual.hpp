#pragma once

#include <cmath>
#include <type_traits>

// Forward-mode automatic differentiation with truncated Taylor pairs.
// Dual<double> carries first derivatives; Dual<Dual<double>> nests to
// second derivatives, which is what the curvature kernels need.

namespace qcc {

template <class T>
struct Dual {
  T a{};  // value part
  T b{};  // derivative part

  Dual() = default;
  Dual(double v) : a(v), b(T{}) {}
  Dual(T value, T deriv) : a(value), b(deriv) {}

  Dual& operator+=(const Dual& o) { a += o.a; b += o.b; return *this; }
  Dual& operator-=(const Dual& o) { a -= o.a; b -= o.b; return *this; }
  Dual& operator*=(const Dual& o) { b = a * o.b + b * o.a; a = a * o.a; return *this; }
  Dual& operator/=(const Dual& o) {
    T inv = T(1) / o.a;
    a = a * inv;
    b = (b - a * o.b) * inv;
    return *this;
  }
};

inline double value(double x) { return x; }
template <class T> double value(const Dual<T>& x) { return value(x.a); }

template <class T> Dual<T> operator+(Dual<T> l, const Dual<T>& r) { return l += r; }
template <class T> Dual<T> operator-(Dual<T> l, const Dual<T>& r) { return l -= r; }
template <class T> Dual<T> operator*(Dual<T> l, const Dual<T>& r) { return l *= r; }
template <class T> Dual<T> operator/(Dual<T> l, const Dual<T>& r) { return l /= r; }

template <class T> Dual<T> operator+(const Dual<T>& x) { return x; }
template <class T> Dual<T> operator-(const Dual<T>& x) { return {-x.a, -x.b}; }

template <class T> Dual<T> operator+(double l, const Dual<T>& r) { return Dual<T>(l) + r; }
template <class T> Dual<T> operator-(double l, const Dual<T>& r) { return Dual<T>(l) - r; }
template <class T> Dual<T> operator*(double l, const Dual<T>& r) { return Dual<T>(l) * r; }
template <class T> Dual<T> operator/(double l, const Dual<T>& r) { return Dual<T>(l) / r; }
template <class T> Dual<T> operator+(const Dual<T>& l, double r) { return l + Dual<T>(r); }
template <class T> Dual<T> operator-(const Dual<T>& l, double r) { return l - Dual<T>(r); }
template <class T> Dual<T> operator*(const Dual<T>& l, double r) { return l * Dual<T>(r); }
template <class T> Dual<T> operator/(const Dual<T>& l, double r) { return l / Dual<T>(r); }

template <class T> bool operator<(const Dual<T>& l, const Dual<T>& r) { return value(l) < value(r); }
template <class T> bool operator>(const Dual<T>& l, const Dual<T>& r) { return value(l) > value(r); }
template <class T> bool operator<(const Dual<T>& l, double r) { return value(l) < r; }
template <class T> bool operator>(const Dual<T>& l, double r) { return value(l) > r; }

using std::cos;
using std::exp;
using std::log;
using std::sin;
using std::sqrt;

template <class T> Dual<T> sqrt(const Dual<T>& x) {
  T r = sqrt(x.a);
  return {r, x.b / (2.0 * r)};
}
template <class T> Dual<T> sin(const Dual<T>& x) { return {sin(x.a), x.b * cos(x.a)}; }
template <class T> Dual<T> cos(const Dual<T>& x) { return {cos(x.a), -x.b * sin(x.a)}; }
template <class T> Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.a);
  return {e, x.b * e};
}
template <class T> Dual<T> log(const Dual<T>& x) { return {log(x.a), x.b / x.a}; }

inline double dabs(double x) { return std::fabs(x); }
template <class T> double dabs(const Dual<T>& x) { return std::fabs(value(x)); }

}  // namespace qcc
