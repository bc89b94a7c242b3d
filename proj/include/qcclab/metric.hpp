#pragma once

#include "qcclab/forms.hpp"

// The metric family g_a on H^n assembled through the lift machinery
//   g(pi_* X, pi_* Y) = d eta_1(J_1 X, Y)   (X, Y in D),
// the twist maps tau_alpha, the twisted projections pi_alpha, the descended
// 2-forms Omega_alpha and the fundamental 2-forms Theta_alpha = g o J_alpha.
//
// With the project d-convention, d omega_1(J_1 X, Y) = 2 <pi_*X, pi_*Y> at the
// origin, so the raw lift metric carries a constant factor 2. The factor is
// measured once (metric_normalization) and divided out so that g_a(0) = id.

namespace qcc {

// J_alpha on H^n itself: right multiplication by conj(i_alpha)
template <class T>
QVector<T> j_flat(int alpha, const QVector<T>& v) {
  return v.rmul(-Quaternion<T>::unit(alpha - 1));
}

// raw (un-normalized) lift metric through index alpha, evaluated at p = (t, z);
// the value must not depend on t or on alpha (audited, not assumed)
template <class T>
T metric_eval_raw(int alpha, double a, const MPoint<T>& p, const QVector<T>& xhat,
                  const QVector<T>& yhat) {
  MTangent<T> X = horizontal_lift(p, xhat);
  MTangent<T> Y = horizontal_lift(p, yhat);
  return d_eta_eval(alpha, a, p, j_on_D(alpha, p, X), Y);
}

// the measured constant relating the raw lift metric to the euclidean one at 0
inline double metric_normalization(std::size_t n, double a) {
  MPoint<double> o = MPoint<double>::origin(n);
  QVector<double> e1(n);
  e1[0] = Quaternion<double>::real(1.0);
  return metric_eval_raw(1, a, o, e1, e1);
}

// normalized metric via the lift route (default base point (0, z))
template <class T>
T metric_eval(double a, const QVector<T>& z, const QVector<T>& xhat,
              const QVector<T>& yhat, int alpha = 1) {
  MPoint<T> p({T{}, T{}, T{}}, z);
  return metric_eval_raw(alpha, a, p, xhat, yhat) * (1.0 / 2.0);
}

// closed-form evaluator of the same normalized metric: g_a = f(z) * delta.
// Kept separate from metric_eval on purpose; the two routes are compared in
// the conformal-identity audit, and curvature kernels consume this functor.
struct MetricField {
  std::size_t n;
  double a;

  std::size_t dim() const { return 4 * n; }

  template <class T>
  Mat<T> operator()(const std::vector<T>& x) const {
    T r2{};
    for (const auto& v : x) r2 += v * v;
    T f = T(1) / (1.0 + a * r2);
    Mat<T> g(x.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g(i, i) = f;
    return g;
  }
};

// auxiliary quadratic form on all of TM (the ambient-space formula):
//   g_w(X, Y) = sum_i w_i(X) w_i(Y) + d w_1(J_1 hor X, hor Y)
inline double g_omega_eval(const MPoint<double>& p, const MTangent<double>& X,
                           const MTangent<double>& Y) {
  double s = 0;
  for (int alpha = 1; alpha <= 3; ++alpha)
    s += omega_eval(alpha, p, X) * omega_eval(alpha, p, Y);
  MTangent<double> hx = horizontal_lift(p, X.zq());
  MTangent<double> hy = horizontal_lift(p, Y.zq());
  return s + d_omega_eval(1, p, j_on_D(1, p, hx), hy);
}

// ----------------------------------------------------------------------------
// Twists tau_alpha(z) = z e^{i_alpha a |z|^2 / 2} and their differentials

template <class T>
QVector<T> tau(int alpha, double a, const QVector<T>& z) {
  return z.rmul(axis_exp(alpha - 1, T(0.5 * a) * z.norm2()));
}

template <class T>
QVector<T> tau_inv(int alpha, double a, const QVector<T>& z) {
  return z.rmul(axis_exp(alpha - 1, T(-0.5 * a) * z.norm2()));
}

// d tau(vhat) = (vhat + a <z, vhat>_R z i_alpha) e^{i_alpha a |z|^2 / 2}
template <class T>
QVector<T> dtau(int alpha, double a, const QVector<T>& z, const QVector<T>& vhat) {
  Quaternion<T> i_al = Quaternion<T>::unit(alpha - 1);
  QVector<T> inner = vhat + z.rmul(i_al * (a * real_inner(z, vhat)));
  return inner.rmul(axis_exp(alpha - 1, T(0.5 * a) * z.norm2()));
}

template <class T>
QVector<T> dtau_inv(int alpha, double a, const QVector<T>& z, const QVector<T>& vhat) {
  Quaternion<T> i_al = Quaternion<T>::unit(alpha - 1);
  QVector<T> inner = vhat - z.rmul(i_al * (a * real_inner(z, vhat)));
  return inner.rmul(axis_exp(alpha - 1, T(-0.5 * a) * z.norm2()));
}

// ----------------------------------------------------------------------------
// Twisted bundle projections pi_alpha((t, z)) = z e^{-i_alpha a t_alpha}

template <class T>
QVector<T> pi_alpha(int alpha, double a, const MPoint<T>& p) {
  return p.z.rmul(axis_exp(alpha - 1, -a * p.t[alpha - 1]));
}

// differential of pi_alpha at p applied to an arbitrary tangent V
template <class T>
QVector<T> pi_alpha_diff(int alpha, double a, const MPoint<T>& p, const MTangent<T>& V) {
  Quaternion<T> i_al = Quaternion<T>::unit(alpha - 1);
  QVector<T> base = V.zq() - p.z.rmul(i_al * (a * V.dt[alpha - 1]));
  return base.rmul(axis_exp(alpha - 1, -a * p.t[alpha - 1]));
}

// the unique horizontal X at p with pi_alpha_* X = uhat (closed-form solve)
template <class T>
MTangent<T> pi_alpha_preimage(int alpha, double a, const MPoint<T>& p, const QVector<T>& uhat) {
  Quaternion<T> i_al = Quaternion<T>::unit(alpha - 1);
  QVector<T> up = uhat.rmul(axis_exp(alpha - 1, a * p.t[alpha - 1]));
  T f = f_eval(a, p);
  T m = im_component(herm_inner(p.z, up), alpha);
  QVector<T> w = up - p.z.rmul(i_al * (a * f * m));
  return horizontal_lift(p, w);
}

// Omega_alpha at u = pi_alpha(p), evaluated through the preimage p
template <class T>
T omega_descended(int alpha, double a, const MPoint<T>& p, const QVector<T>& uhat,
                  const QVector<T>& vhat) {
  MTangent<T> X = pi_alpha_preimage(alpha, a, p, uhat);
  MTangent<T> Y = pi_alpha_preimage(alpha, a, p, vhat);
  return d_eta_eval(alpha, a, p, X, Y);
}

// default preimage of u for Omega evaluation: p = (0, u), so pi_alpha(p) = u
template <class T>
T omega_descended(int alpha, double a, const QVector<T>& u, const QVector<T>& uhat,
                  const QVector<T>& vhat) {
  MPoint<T> p({T{}, T{}, T{}}, u);
  return omega_descended(alpha, a, p, uhat, vhat);
}

// J-hat_alpha at pi_alpha(p): push J_alpha through the bundle projection
template <class T>
QVector<T> j_hat(int alpha, double a, const MPoint<T>& p, const QVector<T>& uhat) {
  MTangent<T> X = pi_alpha_preimage(alpha, a, p, uhat);
  return pi_alpha_diff(alpha, a, p, j_on_D(alpha, p, X));
}

// ----------------------------------------------------------------------------
// Fundamental 2-forms

// direct route: Theta_alpha(X, Y) = g_a(X, J_alpha Y), g_a = f delta
template <class T>
T theta_direct(int alpha, double a, const QVector<T>& z, const QVector<T>& xhat,
               const QVector<T>& yhat) {
  T f = T(1) / (1.0 + a * z.norm2());
  return f * real_inner(xhat, j_flat(alpha, yhat));
}

// pullback route: (tau_alpha^* Omega_alpha)(X, Y) / 2, normalized like g_a
template <class T>
T theta_pullback(int alpha, double a, const QVector<T>& z, const QVector<T>& xhat,
                 const QVector<T>& yhat) {
  QVector<T> u = tau(alpha, a, z);
  return omega_descended(alpha, a, u, dtau(alpha, a, z, xhat), dtau(alpha, a, z, yhat)) *
         (1.0 / 2.0);
}

}  // namespace qcc
