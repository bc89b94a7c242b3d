#pragma once

#include <complex>

#include "qcclab/metric.hpp"

// Quotient structures: M / R^2 with its sections h_alpha and submanifolds
// N_alpha, the (4n+1)-dimensional Heisenberg group N over C^{2n} with its
// contact form and quotient metric, the isomorphism phi of M/R^2 onto N, and
// the central-coordinate lift of maps of H^n through the section
// N_0 = {((-|z|^2/2)(1,1,1), z)}.

namespace qcc {

using Cx = std::complex<double>;
using CVec = std::vector<Cx>;

// q = x1 + i x2 + j x3 + k x4  =  (x1 + i x2) + (x3 + i x4) j
inline std::pair<Cx, Cx> split_cj(const Quaternion<double>& q) {
  return {Cx(q.w, q.x), Cx(q.y, q.z)};
}
inline Quaternion<double> join_cj(const Cx& z, const Cx& w) {
  return {z.real(), z.imag(), w.real(), w.imag()};
}

// psi = phi-hat : H^n -> C^{2n},  z + wj -> (z, conj(w)); real-linear, so it
// is its own differential
inline CVec psi_map(const QVector<double>& q) {
  CVec out(2 * q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    auto [z, w] = split_cj(q[k]);
    out[k] = z;
    out[q.size() + k] = std::conj(w);
  }
  return out;
}

inline double cvec_norm2(const CVec& u) {
  double s = 0;
  for (const auto& v : u) s += std::norm(v);
  return s;
}
inline Cx cvec_herm(const CVec& u, const CVec& v) {
  Cx s(0.0, 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * v[k];
  return s;
}
inline double cvec_real_inner(const CVec& u, const CVec& v) { return cvec_herm(u, v).real(); }
inline CVec cvec_add(CVec u, const CVec& v) {
  for (std::size_t k = 0; k < u.size(); ++k) u[k] += v[k];
  return u;
}
inline CVec cvec_scale(CVec u, const Cx& s) {
  for (auto& v : u) v *= s;
  return u;
}

// ----------------------------------------------------------------------------
// M / R^2: for the alpha-th choice of the killed plane the quotient is
// R x H^n with law (t, z)(s, w) = (t + s - Im_alpha<z, w>, z + w)

struct QuotientPoint {
  int alpha = 1;
  double t = 0;
  QVector<double> z;
};

inline QuotientPoint quotient_project(int alpha, const MPoint<double>& p) {
  return {alpha, p.t[alpha - 1], p.z};
}

inline QuotientPoint quotient_mul(const QuotientPoint& p, const QuotientPoint& q) {
  if (p.alpha != q.alpha) throw std::invalid_argument("quotient_mul: mixed quotients");
  return {p.alpha,
          p.t + q.t - im_component(herm_inner(p.z, q.z), p.alpha),
          p.z + q.z};
}

// sections sfh_alpha(z) = (-|z|^2/2, z i_alpha) with differential
// d sfh_alpha(vhat) = (-<z, vhat>_R, vhat i_alpha)
inline QuotientPoint section_h(int alpha, const QVector<double>& z) {
  return {alpha, -0.5 * z.norm2(),
          z.rmul(Quaternion<double>::unit(alpha - 1))};
}
struct QuotientTangent {
  double dt = 0;
  QVector<double> dz;
};
inline QuotientTangent section_h_diff(int alpha, const QVector<double>& z,
                                      const QVector<double>& vhat) {
  return {-real_inner(z, vhat), vhat.rmul(Quaternion<double>::unit(alpha - 1))};
}

// ----------------------------------------------------------------------------
// Heisenberg group N = R x C^{2n}, law (t, u)(s, u') = (t + s - Im<u, u'>, u + u')

struct NPoint {
  double t = 0;
  CVec u;
};

struct NTangent {
  double dt = 0;
  CVec du;
};

inline NPoint n_mul(const NPoint& p, const NPoint& q) {
  if (p.u.size() != q.u.size()) throw std::invalid_argument("n_mul: dimension mismatch");
  return {p.t + q.t - cvec_herm(p.u, q.u).imag(), cvec_add(p.u, q.u)};
}

// phi : M/R^2 (alpha = 1) -> N, (t, z + wj) -> (t, (z, conj(w)))
inline NPoint phi_iso(const QuotientPoint& p) {
  if (p.alpha != 1) throw std::invalid_argument("phi_iso: defined for the alpha=1 quotient");
  return {p.t, psi_map(p.z)};
}
inline NTangent phi_iso_diff(const QuotientTangent& v) { return {v.dt, psi_map(v.dz)}; }

// contact form omega_N = dt + Im<u, du>, conformal factor, eta_N
inline double omega_N(const NPoint& p, const NTangent& V) {
  return V.dt + cvec_herm(p.u, V.du).imag();
}
inline double f_N(double a, const CVec& u) { return 1.0 / (1.0 + a * cvec_norm2(u)); }
inline double eta_N(double a, const NPoint& p, const NTangent& V) {
  return f_N(a, p.u) * omega_N(p, V);
}
inline double d_omega_N(const NTangent& X, const NTangent& Y) {
  return 2.0 * cvec_real_inner(cvec_scale(X.du, Cx(0.0, 1.0)), Y.du);
}
inline double d_eta_N(double a, const NPoint& p, const NTangent& X, const NTangent& Y) {
  double f = f_N(a, p.u);
  auto df = [&](const NTangent& V) { return -2.0 * a * f * f * cvec_real_inner(p.u, V.du); };
  return df(X) * omega_N(p, Y) - df(Y) * omega_N(p, X) + f * d_omega_N(X, Y);
}

// generator of the R-action rho(t)(s, u) = (t + s, e^{iat} u): xi = (1, i a u)
inline NTangent xi_N(double a, const NPoint& p) {
  return {1.0, cvec_scale(p.u, Cx(0.0, a))};
}

// horizontal lift into ker omega_N and the complex structure on it.
// J_N multiplies the horizontal component by -i (the sign making the
// quotient metric positive definite with the project d-convention).
inline NTangent lift_N(const CVec& u, const CVec& uhat) {
  return {-cvec_herm(u, uhat).imag(), uhat};
}
inline NTangent j_N(const CVec& u, const NTangent& V) {
  return lift_N(u, cvec_scale(V.du, Cx(0.0, -1.0)));
}

// quotient metric g_N((p_1N)_* X, (p_1N)_* Y) = d eta_N(J_N X, Y), divided by
// the same measured constant 2 as the main metric so that g_N(0) = id
inline double g_N_eval(double a, const CVec& u, const CVec& uhat, const CVec& vhat) {
  NPoint p{0.0, u};
  return 0.5 * d_eta_N(a, p, j_N(u, lift_N(u, uhat)), lift_N(u, vhat));
}

// closed-form route g_N = f_N * delta on R^{4n}, for curvature kernels
struct NMetricField {
  std::size_t n;  // H^n source dimension; the metric lives on C^{2n} = R^{4n}
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

// flat real coordinates for C^m: (Re u_1, Im u_1, ..., Re u_m, Im u_m)
inline std::vector<double> cvec_flat(const CVec& u) {
  std::vector<double> out(2 * u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    out[2 * k] = u[k].real();
    out[2 * k + 1] = u[k].imag();
  }
  return out;
}
inline CVec cvec_from_flat(const std::vector<double>& x) {
  CVec out(x.size() / 2);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = Cx(x[2 * k], x[2 * k + 1]);
  return out;
}

// seeded random U(m) matrix by complex Gram-Schmidt on columns
inline std::vector<CVec> random_unitary(Rng& rng, std::size_t m) {
  std::vector<CVec> cols(m, CVec(m));
  for (auto& col : cols)
    for (auto& v : col) v = Cx(rng.normal(), rng.normal());
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Cx c = cvec_herm(cols[k], cols[j]);
      for (std::size_t i = 0; i < m; ++i) cols[j][i] -= c * cols[k][i];
    }
    double nrm = std::sqrt(cvec_norm2(cols[j]));
    if (nrm < 1e-8) throw std::runtime_error("random_unitary: degenerate draw");
    for (auto& v : cols[j]) v /= nrm;
  }
  return cols;  // cols[j][i] = U_{ij}
}
inline CVec unitary_apply(const std::vector<CVec>& cols, const CVec& u) {
  CVec out(u.size(), Cx(0.0, 0.0));
  for (std::size_t j = 0; j < u.size(); ++j)
    for (std::size_t i = 0; i < u.size(); ++i) out[i] += cols[j][i] * u[j];
  return out;
}

// ----------------------------------------------------------------------------
// Central-coordinate lift of h : z -> A z conj(alpha) through the section
// N_0 = {((-|z|^2/2)(1,1,1), z)}:
//   h~(t, z) = (t + ((|z|^2 - |h(z)|^2)/2)(1,1,1), h(z))

struct LinearIsometry {
  QMatrix<double> A;
  Quaternion<double> alpha;

  QVector<double> map(const QVector<double>& z) const { return (A * z).rmul(alpha.conj()); }
};

inline MPoint<double> tilde_h(const LinearIsometry& h, const MPoint<double>& p) {
  QVector<double> hz = h.map(p.z);
  double c = 0.5 * (p.z.norm2() - hz.norm2());
  return {{p.t[0] + c, p.t[1] + c, p.t[2] + c}, hz};
}

inline MTangent<double> tilde_h_diff(const LinearIsometry& h, const MPoint<double>& p,
                                     const MTangent<double>& V) {
  QVector<double> hz = h.map(p.z);
  QVector<double> hdz = h.map(V.zq());
  double c = real_inner(p.z, V.zq()) - real_inner(hz, hdz);
  return {{V.dt[0] + c, V.dt[1] + c, V.dt[2] + c}, hdz.flat()};
}

}  // namespace qcc
