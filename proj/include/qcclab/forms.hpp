#pragma once

#include <vector>

#include "qcclab/heisenberg.hpp"
#include "qcclab/linalg.hpp"

// The 1-forms omega_alpha and eta_alpha = f * omega_alpha on M, their
// exterior derivatives in closed form, the horizontal distribution
// D = ker omega with its explicit basis, horizontal lifts and the
// hypercomplex structure J_alpha acting on D.
//
// Exterior-derivative convention, fixed project-wide:
//   d theta(X, Y) = X theta(Y) - Y theta(X)        (constant extensions)
//   (a ^ b)(X, Y) = a(X) b(Y) - a(Y) b(X)
// With this convention d omega_1 (d/dx1, d/dx2) = 2.

namespace qcc {

// component alpha (1..3) of the imaginary part of a quaternion
template <class T>
T im_component(const Quaternion<T>& q, int alpha) {
  return alpha == 1 ? q.x : (alpha == 2 ? q.y : q.z);
}

// omega_alpha(V) = dt_alpha + Im_alpha<z, dz_V>
template <class T>
T omega_eval(int alpha, const MPoint<T>& p, const MTangent<T>& V) {
  return V.dt[alpha - 1] + im_component(herm_inner(p.z, V.zq()), alpha);
}

// the Im H - valued form omega(V) as a (purely imaginary) quaternion
template <class T>
Quaternion<T> omega_quat(const MPoint<T>& p, const MTangent<T>& V) {
  Quaternion<T> q = herm_inner(p.z, V.zq());
  q.w = T{};
  q.x += V.dt[0];
  q.y += V.dt[1];
  q.z += V.dt[2];
  return q;
}

template <class T>
T f_eval(double a, const MPoint<T>& p) {
  return T(1) / (1.0 + a * p.z.norm2());
}

// df(V) = -2 a f^2 <z, dz_V>_R   (closed form, never finite-differenced here)
template <class T>
T df_eval(double a, const MPoint<T>& p, const MTangent<T>& V) {
  T f = f_eval(a, p);
  return -2.0 * a * f * f * real_inner(p.z, V.zq());
}

template <class T>
T eta_eval(int alpha, double a, const MPoint<T>& p, const MTangent<T>& V) {
  return f_eval(a, p) * omega_eval(alpha, p, V);
}

// d omega_alpha(X, Y) = 2 <dz_X i_alpha, dz_Y>_R  (constant coefficients)
template <class T>
T d_omega_eval(int alpha, const MPoint<T>&, const MTangent<T>& X, const MTangent<T>& Y) {
  return 2.0 * real_inner(X.zq().rmul(Quaternion<T>::unit(alpha - 1)), Y.zq());
}

// d eta_alpha = df ^ omega_alpha + f d omega_alpha
template <class T>
T d_eta_eval(int alpha, double a, const MPoint<T>& p, const MTangent<T>& X,
             const MTangent<T>& Y) {
  return df_eval(a, p, X) * omega_eval(alpha, p, Y) -
         df_eval(a, p, Y) * omega_eval(alpha, p, X) +
         f_eval(a, p) * d_omega_eval(alpha, p, X, Y);
}

// ----------------------------------------------------------------------------
// Horizontal distribution

// the unique V in D with pi_* V = vhat: dt_alpha = -Im_alpha<z, vhat>
template <class T>
MTangent<T> horizontal_lift(const MPoint<T>& p, const QVector<T>& vhat) {
  MTangent<T> out(p.z.size());
  auto im = herm_inner(p.z, vhat).im();
  out.dt = {-im[0], -im[1], -im[2]};
  out.dz = vhat.flat();
  return out;
}

template <class T>
double horizontal_defect(const MPoint<T>& p, const MTangent<T>& V) {
  double worst = 0;
  for (int alpha = 1; alpha <= 3; ++alpha)
    worst = std::max(worst, dabs(omega_eval(alpha, p, V)));
  return worst;
}

struct HorizontalVec {
  MTangent<double> v;

  HorizontalVec(const MPoint<double>& p, MTangent<double> v_) : v(std::move(v_)) {
    if (horizontal_defect(p, v) >= 1e-12)
      throw std::invalid_argument("HorizontalVec: omega(V) != 0");
  }
};

// J_alpha on D: project, right-multiply by conj(i_alpha), lift back
template <class T>
MTangent<T> j_on_D(int alpha, const MPoint<T>& p, const MTangent<T>& V) {
  Quaternion<T> ibar = -Quaternion<T>::unit(alpha - 1);
  return horizontal_lift(p, V.zq().rmul(ibar));
}

// ----------------------------------------------------------------------------
// The explicit basis of D: for each k the four vectors
//   v_k : dz_k = z_k                   (radial)
//   w_k : dt_1 = |z_k|^2, dz_k = -z_k i
//   u_k : dt_2 = |z_k|^2, dz_k = -z_k j
//   s_k : dt_3 = |z_k|^2, dz_k = -z_k k
// (two coordinate typos in the printed u_k and omega_3 displays are corrected
// by the quaternionic pattern; each vector is annihilated by all omega_alpha)

template <class T>
std::vector<MTangent<T>> d_basis(const MPoint<T>& p) {
  std::size_t n = p.z.size();
  std::vector<MTangent<T>> out;
  out.reserve(4 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const Quaternion<T>& zk = p.z[k];
    T r2 = zk.norm2();
    for (int m = 0; m < 4; ++m) {
      MTangent<T> v(n);
      QVector<T> dz(n);
      if (m == 0) {
        dz[k] = zk;
      } else {
        v.dt[m - 1] = r2;
        dz[k] = zk * (-Quaternion<T>::unit(m - 1));
      }
      v.dz = dz.flat();
      out.push_back(std::move(v));
    }
  }
  return out;
}

// the barred vectors of the quotient picture: same dz parts, no dt component
template <class T>
QVector<T> d_basis_bar(int which /*1=w,2=u,3=s*/, const MPoint<T>& p, std::size_t k) {
  QVector<T> dz(p.z.size());
  dz[k] = p.z[k] * (-Quaternion<T>::unit(which - 1));
  return dz;
}

// pullback of omega under h in E(M): (h^* omega)_p(V) = omega_{h(p)}(dh V)
inline Quaternion<double> pullback_omega(const EMElement& h, const MPoint<double>& p,
                                         const MTangent<double>& V) {
  return omega_quat(em_act(h, p), em_diff(h, V));
}

inline double pullback_eta(int alpha, double a, const EMElement& h, const MPoint<double>& p,
                           const MTangent<double>& V) {
  return eta_eval(alpha, a, em_act(h, p), em_diff(h, V));
}

// Gram matrix of a list of tangents in the flat (4n+3)-coordinate pairing,
// used for rank checks of d_basis
inline Mat<double> tangent_gram(const std::vector<MTangent<double>>& vs) {
  Mat<double> g(vs.size(), vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) {
      double s = 0;
      for (int c = 0; c < 3; ++c) s += vs[i].dt[c] * vs[j].dt[c];
      for (std::size_t c = 0; c < vs[i].dz.size(); ++c) s += vs[i].dz[c] * vs[j].dz[c];
      g(i, j) = s;
    }
  return g;
}

}  // namespace qcc
