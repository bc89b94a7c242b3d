#pragma once

#include <array>
#include <stdexcept>

#include "qcclab/quat.hpp"

// The quaternionic Heisenberg group M = R^3 x H^n with law
//   (t,z).(s,w) = (t + s - Im<z,w>, z + w),
// its euclidean group E(M) = M x| (Sp(n).Sp(1)), the three solvable
// one-parameter deformations and their generating vector fields.
//
// The central R^3 coordinates (t1,t2,t3) are identified with Im H via
// t1 i + t2 j + t3 k everywhere.

namespace qcc {

template <class T>
struct MPoint {
  std::array<T, 3> t{};
  QVector<T> z;

  MPoint() = default;
  MPoint(std::array<T, 3> t_, QVector<T> z_) : t(t_), z(std::move(z_)) {}
  static MPoint origin(std::size_t n) { return MPoint({T{}, T{}, T{}}, QVector<T>(n)); }
};

template <class T>
struct MTangent {
  std::array<T, 3> dt{};
  std::vector<T> dz;  // 4n coefficients on d/dx_1 .. d/dx_{4n}

  MTangent() = default;
  explicit MTangent(std::size_t n) : dz(4 * n, T{}) {}
  MTangent(std::array<T, 3> dt_, std::vector<T> dz_) : dt(dt_), dz(std::move(dz_)) {}

  QVector<T> zq() const { return QVector<T>::from_flat(dz); }

  MTangent& operator+=(const MTangent& o) {
    for (int i = 0; i < 3; ++i) dt[i] += o.dt[i];
    for (std::size_t i = 0; i < dz.size(); ++i) dz[i] += o.dz[i];
    return *this;
  }
  MTangent& operator-=(const MTangent& o) {
    for (int i = 0; i < 3; ++i) dt[i] -= o.dt[i];
    for (std::size_t i = 0; i < dz.size(); ++i) dz[i] -= o.dz[i];
    return *this;
  }
  MTangent operator*(double s) const {
    MTangent out = *this;
    for (int i = 0; i < 3; ++i) out.dt[i] = out.dt[i] * s;
    for (auto& v : out.dz) v = v * s;
    return out;
  }

  double max_abs() const {
    double m = 0;
    for (int i = 0; i < 3; ++i) m = std::max(m, dabs(dt[i]));
    for (const auto& v : dz) m = std::max(m, dabs(v));
    return m;
  }
};

template <class T> MTangent<T> operator+(MTangent<T> a, const MTangent<T>& b) { return a += b; }
template <class T> MTangent<T> operator-(MTangent<T> a, const MTangent<T>& b) { return a -= b; }

template <class T>
MPoint<T> m_mul(const MPoint<T>& p, const MPoint<T>& q) {
  if (p.z.size() != q.z.size()) throw std::invalid_argument("m_mul: dimension mismatch");
  auto im = herm_inner(p.z, q.z).im();
  MPoint<T> out;
  for (int i = 0; i < 3; ++i) out.t[i] = p.t[i] + q.t[i] - im[i];
  out.z = p.z + q.z;
  return out;
}

template <class T>
MPoint<T> m_inv(const MPoint<T>& p) {
  // (t,z)^{-1} = (-t, -z); Im<z,z> = 0 makes this exact
  MPoint<T> out;
  for (int i = 0; i < 3; ++i) out.t[i] = -p.t[i];
  out.z = QVector<T>(p.z.size()) - p.z;
  return out;
}

// ----------------------------------------------------------------------------
// E(M) = M x| (Sp(n).Sp(1)). h = ((t,v), A.alpha) acts by the rotation
// R(s,z) = (alpha s conj(alpha), Az conj(alpha)) followed by left translation:
//   h(s,z) = (t,v).R(s,z)
//          = (t + alpha s conj(alpha) - Im<v, Az conj(alpha)>, v + Az conj(alpha))

struct EMElement {
  std::array<double, 3> t{};
  QVector<double> v;
  QMatrix<double> A;
  Quaternion<double> alpha;

  EMElement() = default;
  EMElement(std::array<double, 3> t_, QVector<double> v_, QMatrix<double> A_, UnitQuaternion al)
      : t(t_), v(std::move(v_)), A(std::move(A_)), alpha(al.q) {}

  static EMElement identity(std::size_t n) {
    return {{0, 0, 0}, QVector<double>(n), QMatrix<double>::identity(n),
            UnitQuaternion(Quaternion<double>::real(1.0))};
  }
  static EMElement translation(std::array<double, 3> t, QVector<double> v) {
    std::size_t n = v.size();
    return {t, std::move(v), QMatrix<double>::identity(n),
            UnitQuaternion(Quaternion<double>::real(1.0))};
  }
};

inline MPoint<double> em_act(const EMElement& h, const MPoint<double>& p) {
  QVector<double> az = (h.A * p.z).rmul(h.alpha.conj());
  Quaternion<double> s = Quaternion<double>::imag(p.t);
  Quaternion<double> rot = h.alpha * s * h.alpha.conj();
  auto im = herm_inner(h.v, az).im();
  MPoint<double> out;
  out.t = {h.t[0] + rot.x - im[0], h.t[1] + rot.y - im[1], h.t[2] + rot.z - im[2]};
  out.z = h.v + az;
  return out;
}

// differential of em_act (the affine map's linear part)
inline MTangent<double> em_diff(const EMElement& h, const MTangent<double>& V) {
  QVector<double> adz = (h.A * V.zq()).rmul(h.alpha.conj());
  Quaternion<double> ds = Quaternion<double>::imag(V.dt);
  Quaternion<double> rot = h.alpha * ds * h.alpha.conj();
  auto im = herm_inner(h.v, adz).im();
  MTangent<double> out;
  out.dt = {rot.x - im[0], rot.y - im[1], rot.z - im[2]};
  out.dz = adz.flat();
  return out;
}

// composition law: em_act(em_mul(h1,h2), p) == em_act(h1, em_act(h2, p)).
// The translation parts compose in M: (t1,v1).R1(t2,v2).
inline EMElement em_mul(const EMElement& h1, const EMElement& h2) {
  EMElement out;
  Quaternion<double> t2 = Quaternion<double>::imag(h2.t);
  Quaternion<double> rot = h1.alpha * t2 * h1.alpha.conj();
  QVector<double> rv = (h1.A * h2.v).rmul(h1.alpha.conj());
  auto im = herm_inner(h1.v, rv).im();
  out.t = {h1.t[0] + rot.x - im[0], h1.t[1] + rot.y - im[1], h1.t[2] + rot.z - im[2]};
  out.v = h1.v + rv;
  out.A = h1.A * h2.A;
  out.alpha = h1.alpha * h2.alpha;
  return out;
}

// ----------------------------------------------------------------------------
// The solvable actions R_alpha and the vector fields xi_alpha.
//
// rho_alpha(t_alpha) = (t_alpha i_alpha, 0, I . e^{-i_alpha a t_alpha}),
// the other two parameters act as central translations.  The composite
// rho_alpha(t1,t2,t3) applies the two translations first, then the twist.

struct SolvableIndex {
  int alpha;  // 1..3
  std::array<double, 3> t;

  SolvableIndex(int alpha_, std::array<double, 3> t_) : alpha(alpha_), t(t_) {
    if (alpha < 1 || alpha > 3) throw std::invalid_argument("SolvableIndex: alpha out of range");
  }
};

inline EMElement rho_element(int alpha, const std::array<double, 3>& t, double a, std::size_t n) {
  int ax = alpha - 1;
  std::array<double, 3> twist_t{};
  twist_t[ax] = t[ax];
  EMElement twist{twist_t, QVector<double>(n), QMatrix<double>::identity(n),
                  UnitQuaternion(axis_exp(ax, -a * t[ax]))};
  std::array<double, 3> trans_t = t;
  trans_t[ax] = 0;
  EMElement trans = EMElement::translation(trans_t, QVector<double>(n));
  return em_mul(twist, trans);
}

inline MPoint<double> rho_act(const SolvableIndex& idx, const MPoint<double>& p, double a) {
  if (a <= 0) throw std::invalid_argument("rho_act: deformation parameter a must be > 0");
  return em_act(rho_element(idx.alpha, idx.t, a, p.z.size()), p);
}

// xi_alpha at p: central part e_alpha + 2a(s_gamma e_beta - s_beta e_gamma)
// with (alpha,beta,gamma) cyclic, plus the rotational field a * (z i_alpha).
template <class T>
MTangent<T> xi_field(int alpha, const MPoint<T>& p, double a) {
  if (alpha < 1 || alpha > 3) throw std::invalid_argument("xi_field: alpha out of range");
  int ax = alpha - 1, b = alpha % 3, g = (alpha + 1) % 3;
  MTangent<T> out(p.z.size());
  out.dt[ax] = T(1);
  out.dt[b] += 2.0 * a * p.t[g];
  out.dt[g] -= 2.0 * a * p.t[b];
  out.dz = p.z.rmul(Quaternion<T>::unit(ax) * a).flat();
  return out;
}

}  // namespace qcc
