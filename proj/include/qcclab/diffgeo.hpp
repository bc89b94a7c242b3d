#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qcclab/linalg.hpp"

// Metric-agnostic numerical Riemannian toolkit. A metric is any functor with
//   std::size_t dim() const
//   template<class T> Mat<T> operator()(const std::vector<T>& x) const
// so every quantity can be evaluated in two independent backends:
//   - dual:  forward-mode derivatives, exact to machine precision
//   - fd:    central differences, h = 1e-5 for first derivatives and a
//            Richardson-extrapolated h = 1e-4 base step for Christoffel
//            derivatives
//
// Index conventions, used everywhere:
//   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   R(e_k, e_l) e_j = R^i_{jkl} e_i
//   Ricci(Y,Z) = trace(X -> R(X,Y)Z),  Ric_ab = sum_i R^i_{b i a}

namespace qcc {

enum class Backend { fd, dual };

// rank-3 array of Christoffel symbols, c(i,j,k) = Gamma^i_{jk}
template <class T>
struct Christoffel {
  std::size_t d = 0;
  std::vector<T> c;
  explicit Christoffel(std::size_t d_ = 0) : d(d_), c(d_ * d_ * d_) {}
  T& operator()(std::size_t i, std::size_t j, std::size_t k) { return c[(i * d + j) * d + k]; }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c[(i * d + j) * d + k];
  }
};

// partial derivatives of the metric: out[k] = d g / d x_k (dual backend)
template <class G, class T>
std::vector<Mat<T>> metric_d1_dual(const G& g, const std::vector<T>& x) {
  std::size_t d = x.size();
  std::vector<Mat<T>> out(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Dual<T>> xd(d);
    for (std::size_t i = 0; i < d; ++i) xd[i] = Dual<T>(x[i], T(i == k ? 1 : 0));
    Mat<Dual<T>> gm = g(xd);
    out[k] = Mat<T>(gm.rows, gm.cols);
    for (std::size_t i = 0; i < gm.a.size(); ++i) out[k].a[i] = gm.a[i].b;
  }
  return out;
}

template <class G>
std::vector<Mat<double>> metric_d1_fd(const G& g, const std::vector<double>& x,
                                      double h = 1e-5) {
  std::size_t d = x.size();
  std::vector<Mat<double>> out(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<double> xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    Mat<double> gp = g(xp), gm = g(xm);
    out[k] = (gp - gm) * (0.5 / h);
  }
  return out;
}

template <class G, class T>
Christoffel<T> christoffel_t(const G& g, const std::vector<T>& x) {
  std::size_t d = x.size();
  std::vector<Mat<T>> dg = metric_d1_dual(g, x);
  Mat<T> ginv = inverse(g(x));
  Christoffel<T> out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        T s{};
        for (std::size_t l = 0; l < d; ++l)
          s += ginv(i, l) * (dg[j](l, k) + dg[k](l, j) - dg[l](j, k));
        out(i, j, k) = s * 0.5;
      }
  return out;
}

template <class G>
Christoffel<double> christoffel_fd(const G& g, const std::vector<double>& x,
                                   double h = 1e-5) {
  std::size_t d = x.size();
  std::vector<Mat<double>> dg = metric_d1_fd(g, x, h);
  Mat<double> ginv = inverse(g(x));
  Christoffel<double> out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        double s = 0;
        for (std::size_t l = 0; l < d; ++l)
          s += ginv(i, l) * (dg[j](l, k) + dg[k](l, j) - dg[l](j, k));
        out(i, j, k) = 0.5 * s;
      }
  return out;
}

template <class G>
Christoffel<double> christoffel(const G& g, const std::vector<double>& x, Backend b) {
  return b == Backend::dual ? christoffel_t(g, x) : christoffel_fd(g, x);
}

struct CurvatureAtPoint {
  std::size_t d = 0;
  Christoffel<double> gamma;
  std::vector<double> riemann_up;   // R^i_{jkl}, index ((i d + j) d + k) d + l
  std::vector<double> riemann_low;  // R_{ijkl}
  Mat<double> ricci;
  double scalar = 0;

  double up(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return riemann_up[((i * d + j) * d + k) * d + l];
  }
  double low(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return riemann_low[((i * d + j) * d + k) * d + l];
  }
  double riemann_norm2() const {
    double s = 0;
    for (double v : riemann_low) s += v * v;
    return s;
  }
};

// dGamma[m](i,j,k) = d Gamma^i_{jk} / d x_m
template <class G>
std::vector<Christoffel<double>> christoffel_d1(const G& g, const std::vector<double>& x,
                                                Backend b) {
  std::size_t d = x.size();
  std::vector<Christoffel<double>> out(d, Christoffel<double>(d));
  if (b == Backend::dual) {
    for (std::size_t m = 0; m < d; ++m) {
      std::vector<Dual<double>> xd(d);
      for (std::size_t i = 0; i < d; ++i) xd[i] = Dual<double>(x[i], i == m ? 1.0 : 0.0);
      Christoffel<Dual<double>> cd = christoffel_t(g, xd);
      for (std::size_t i = 0; i < cd.c.size(); ++i) out[m].c[i] = cd.c[i].b;
    }
    return out;
  }
  const double h = 1e-4;
  auto diff = [&](std::size_t m, double step) {
    std::vector<double> xp = x, xm = x;
    xp[m] += step;
    xm[m] -= step;
    Christoffel<double> cp = christoffel_fd(g, xp), cm = christoffel_fd(g, xm);
    Christoffel<double> r(d);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = (cp.c[i] - cm.c[i]) / (2.0 * step);
    return r;
  };
  for (std::size_t m = 0; m < d; ++m) {
    Christoffel<double> d1 = diff(m, h), d2 = diff(m, 0.5 * h);
    for (std::size_t i = 0; i < out[m].c.size(); ++i)
      out[m].c[i] = (4.0 * d2.c[i] - d1.c[i]) / 3.0;  // Richardson O(h^4)
  }
  return out;
}

template <class G>
CurvatureAtPoint riemann_ricci(const G& g, const std::vector<double>& x, Backend b) {
  std::size_t d = x.size();
  CurvatureAtPoint out;
  out.d = d;
  out.gamma = christoffel(g, x, b);
  std::vector<Christoffel<double>> dG = christoffel_d1(g, x, b);
  out.riemann_up.assign(d * d * d * d, 0.0);
  const Christoffel<double>& c = out.gamma;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          double v = dG[k](i, l, j) - dG[l](i, k, j);
          for (std::size_t m = 0; m < d; ++m)
            v += c(i, k, m) * c(m, l, j) - c(i, l, m) * c(m, k, j);
          out.riemann_up[((i * d + j) * d + k) * d + l] = v;
        }
  Mat<double> gm = g(x);
  out.riemann_low.assign(d * d * d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          double v = 0;
          for (std::size_t m = 0; m < d; ++m) v += gm(i, m) * out.up(m, j, k, l);
          out.riemann_low[((i * d + j) * d + k) * d + l] = v;
        }
  out.ricci = Mat<double>(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t bb = 0; bb < d; ++bb) {
      double v = 0;
      for (std::size_t i = 0; i < d; ++i) v += out.up(i, bb, i, a);
      out.ricci(a, bb) = v;
    }
  Mat<double> ginv = inverse(gm);
  out.scalar = 0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t bb = 0; bb < d; ++bb) out.scalar += ginv(a, bb) * out.ricci(a, bb);
  return out;
}

// residual of the first Bianchi identity and the pair symmetries, for checks
inline double curvature_symmetry_defect(const CurvatureAtPoint& r) {
  double worst = 0;
  std::size_t d = r.d;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          worst = std::max(worst, std::fabs(r.low(i, j, k, l) + r.low(j, i, k, l)));
          worst = std::max(worst, std::fabs(r.low(i, j, k, l) + r.low(i, j, l, k)));
          worst = std::max(worst, std::fabs(r.low(i, j, k, l) - r.low(k, l, i, j)));
          worst = std::max(worst, std::fabs(r.up(i, j, k, l) + r.up(i, k, l, j) +
                                            r.up(i, l, j, k)));
        }
  return worst;
}

// ----------------------------------------------------------------------------
// Independent oracle for conformally flat metrics g = e^{2 phi} delta:
//   Gamma^k_{ij} = delta_ki phi_j + delta_kj phi_i - delta_ij phi_k
//   Ric_ij = -(d-2)(phi_ij - phi_i phi_j) - (lap phi + (d-2)|grad phi|^2) delta_ij
// phi is any functor with a templated scalar call; its derivatives are taken
// with dual numbers, which is independent of the generic curvature path.

template <class Phi>
struct ConformalOracle {
  Phi phi;
  std::size_t d;

  void derivatives(const std::vector<double>& x, std::vector<double>& p1,
                   Mat<double>& p2) const {
    p1.assign(d, 0.0);
    p2 = Mat<double>(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<Dual<Dual<double>>> xd(d);
      for (std::size_t i = 0; i < d; ++i) {
        xd[i] = Dual<Dual<double>>(Dual<double>(x[i], 0.0), Dual<double>(0.0, 0.0));
        if (i == k) xd[i].b.a = 1.0;  // outer seed: d/dx_k
      }
      for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t i = 0; i < d; ++i) xd[i].a.b = (i == m) ? 1.0 : 0.0;
        Dual<Dual<double>> v = phi(xd);
        if (m == 0) p1[k] = v.b.a;
        p2(k, m) = v.b.b;
      }
    }
  }

  Christoffel<double> christoffel(const std::vector<double>& x) const {
    std::vector<double> p1;
    Mat<double> p2;
    derivatives(x, p1, p2);
    Christoffel<double> c(d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          c(k, i, j) = (k == i ? p1[j] : 0.0) + (k == j ? p1[i] : 0.0) -
                       (i == j ? p1[k] : 0.0);
    return c;
  }

  Mat<double> ricci(const std::vector<double>& x) const {
    std::vector<double> p1;
    Mat<double> p2;
    derivatives(x, p1, p2);
    double lap = 0, grad2 = 0;
    for (std::size_t i = 0; i < d; ++i) {
      lap += p2(i, i);
      grad2 += p1[i] * p1[i];
    }
    Mat<double> ric(d, d);
    double dd = static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        ric(i, j) = -(dd - 2.0) * (p2(i, j) - p1[i] * p1[j]);
        if (i == j) ric(i, j) -= lap + (dd - 2.0) * grad2;
      }
    return ric;
  }
};

// ----------------------------------------------------------------------------
// Covariant derivative of an endomorphism field J (matrix-valued functor):
//   (nabla_k J)^i_j = d_k J^i_j + Gamma^i_{km} J^m_j - Gamma^m_{kj} J^i_m

template <class G, class JF>
double nabla_j_norm(const G& g, const JF& jf, const std::vector<double>& x, Backend b) {
  std::size_t d = x.size();
  Christoffel<double> c = christoffel(g, x, b);
  std::vector<Mat<double>> dJ(d);
  if (b == Backend::dual) {
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<Dual<double>> xd(d);
      for (std::size_t i = 0; i < d; ++i) xd[i] = Dual<double>(x[i], i == k ? 1.0 : 0.0);
      Mat<Dual<double>> jm = jf(xd);
      dJ[k] = Mat<double>(d, d);
      for (std::size_t i = 0; i < jm.a.size(); ++i) dJ[k].a[i] = jm.a[i].b;
    }
  } else {
    const double h = 1e-5;
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<double> xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      dJ[k] = (jf(xp) - jf(xm)) * (0.5 / h);
    }
  }
  Mat<double> J = jf(x);
  double s = 0;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        double v = dJ[k](i, j);
        for (std::size_t m = 0; m < d; ++m)
          v += c(i, k, m) * J(m, j) - c(m, k, j) * J(i, m);
        s += v * v;
      }
  return std::sqrt(s);
}

// ----------------------------------------------------------------------------
// Curves, parallel transport, geodesics (fixed-step RK4)

struct Curve {
  std::function<std::vector<double>(double)> x;   // position, t in [0,1]
  std::function<std::vector<double>(double)> dx;  // velocity
};

// closed rectangle in the (i,j) coordinate plane through base, side r,
// smoothed corners are unnecessary: the transport ODE is integrated per edge
inline std::vector<Curve> rectangle_loop(const std::vector<double>& base, std::size_t i,
                                         std::size_t j, double r) {
  auto edge = [base](std::size_t axis, double from_i, double from_j, std::size_t ii,
                     std::size_t jj, double dir) {
    Curve c;
    c.x = [=](double t) {
      std::vector<double> p = base;
      p[ii] += from_i;
      p[jj] += from_j;
      p[axis] += dir * t;
      return p;
    };
    c.dx = [=](double) {
      std::vector<double> v(base.size(), 0.0);
      v[axis] = dir;
      return v;
    };
    return c;
  };
  return {edge(i, 0, 0, i, j, r), edge(j, r, 0, i, j, r), edge(i, r, r, i, j, -r),
          edge(j, 0, r, i, j, -r)};
}

// transport the frame V (columns) along one curve: dV^i = -Gamma^i_{jk} dx^j V^k
template <class G>
Mat<double> transport_segment(const G& g, const Curve& curve, Mat<double> V, Backend b,
                              int steps) {
  std::size_t d = V.rows;
  auto rhs = [&](double t, const Mat<double>& v) {
    Christoffel<double> c = christoffel(g, curve.x(t), b);
    std::vector<double> dx = curve.dx(t);
    Mat<double> out(d, v.cols);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t col = 0; col < v.cols; ++col) {
        double s = 0;
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t k = 0; k < d; ++k) s += c(i, j, k) * dx[j] * v(k, col);
        out(i, col) = -s;
      }
    return out;
  };
  double h = 1.0 / steps;
  for (int s = 0; s < steps; ++s) {
    double t = s * h;
    Mat<double> k1 = rhs(t, V);
    Mat<double> k2 = rhs(t + 0.5 * h, V + k1 * (0.5 * h));
    Mat<double> k3 = rhs(t + 0.5 * h, V + k2 * (0.5 * h));
    Mat<double> k4 = rhs(t + h, V + k3 * h);
    V += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
  }
  return V;
}

template <class G>
Mat<double> parallel_transport(const G& g, const std::vector<Curve>& loop, Backend b,
                               int steps_per_segment = 200) {
  std::size_t d = g.dim();
  Mat<double> V = Mat<double>::identity(d);
  for (const Curve& c : loop) V = transport_segment(g, c, V, b, steps_per_segment);
  return V;
}

struct GeodesicResult {
  std::vector<double> x, v;
  double speed_drift = 0;  // max |g(v,v) - g(v0,v0)| along the way
  bool finite = true;
};

template <class G>
GeodesicResult geodesic(const G& g, std::vector<double> x, std::vector<double> v, double T,
                        Backend b, double h = 1e-3) {
  std::size_t d = x.size();
  auto quad = [&](const std::vector<double>& xx, const std::vector<double>& vv) {
    Mat<double> gm = g(xx);
    double s = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) s += gm(i, j) * vv[i] * vv[j];
    return s;
  };
  double e0 = quad(x, v);
  auto acc = [&](const std::vector<double>& xx, const std::vector<double>& vv) {
    Christoffel<double> c = christoffel(g, xx, b);
    std::vector<double> a(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) a[i] -= c(i, j, k) * vv[j] * vv[k];
    return a;
  };
  GeodesicResult out;
  int steps = static_cast<int>(T / h);
  auto axpy = [&](const std::vector<double>& base, const std::vector<double>& dir,
                  double s) {
    std::vector<double> r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = base[i] + s * dir[i];
    return r;
  };
  for (int s = 0; s < steps; ++s) {
    std::vector<double> k1x = v, k1v = acc(x, v);
    std::vector<double> x2 = axpy(x, k1x, 0.5 * h), v2 = axpy(v, k1v, 0.5 * h);
    std::vector<double> k2x = v2, k2v = acc(x2, v2);
    std::vector<double> x3 = axpy(x, k2x, 0.5 * h), v3 = axpy(v, k2v, 0.5 * h);
    std::vector<double> k3x = v3, k3v = acc(x3, v3);
    std::vector<double> x4 = axpy(x, k3x, h), v4 = axpy(v, k3v, h);
    std::vector<double> k4x = v4, k4v = acc(x4, v4);
    for (std::size_t i = 0; i < d; ++i) {
      x[i] += h / 6.0 * (k1x[i] + 2 * k2x[i] + 2 * k3x[i] + k4x[i]);
      v[i] += h / 6.0 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
    }
    for (double c : x)
      if (!std::isfinite(c)) { out.finite = false; break; }
    if (!out.finite) break;
    out.speed_drift = std::max(out.speed_drift, std::fabs(quad(x, v) - e0));
  }
  out.x = x;
  out.v = v;
  return out;
}

// ----------------------------------------------------------------------------
// Numerical exterior derivative (constant-vector extensions, no bracket term)

// directional derivative of a templated scalar functor along u
template <class F>
double dir_derivative(const F& f, const std::vector<double>& x,
                      const std::vector<double>& u, Backend b) {
  if (b == Backend::dual) {
    std::size_t d = x.size();
    std::vector<Dual<double>> xd(d);
    for (std::size_t i = 0; i < d; ++i) xd[i] = Dual<double>(x[i], u[i]);
    return f(xd).b;
  }
  const double h = 1e-5;
  std::vector<double> xp = x, xm = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] += h * u[i];
    xm[i] -= h * u[i];
  }
  return (f(xp) - f(xm)) / (2.0 * h);
}

// d of a 1-form: theta is a functor (point, fixed vector index) -> scalar,
// presented as theta(x)(v) via capture; we take two evaluators bound to u, v
template <class FU, class FV>
double numeric_d1(const FU& theta_of_v, const FV& theta_of_u, const std::vector<double>& x,
                  const std::vector<double>& u, const std::vector<double>& v, Backend b) {
  return dir_derivative(theta_of_v, x, u, b) - dir_derivative(theta_of_u, x, v, b);
}

// d of a 2-form omega evaluated on (u, v, w); omega_ab(x) = omega_x(a, b)
template <class F>
double numeric_d2(const F& omega, const std::vector<double>& x, const std::vector<double>& u,
                  const std::vector<double>& v, const std::vector<double>& w, Backend b) {
  auto bind = [&](const std::vector<double>& p, const std::vector<double>& q) {
    return [&omega, p, q](const auto& xx) { return omega(xx, p, q); };
  };
  return dir_derivative(bind(v, w), x, u, b) - dir_derivative(bind(u, w), x, v, b) +
         dir_derivative(bind(u, v), x, w, b);
}

// ----------------------------------------------------------------------------
// Bochner tensor of a Kaehler metric on R^{2m} with the standard complex
// structure J e_{2i-1} = e_{2i}. In the complex frame Z_i = (e_{2i-1} - i e_{2i})/sqrt2:
//   B_{ij.kl.} = R_{ij.kl.}
//     - 1/(m+2) [ g_{ij.} Ric_{kl.} + Ric_{ij.} g_{kl.} + g_{il.} Ric_{kj.} + Ric_{il.} g_{kj.} ]
//     + S / ((m+1)(m+2)) [ g_{ij.} g_{kl.} + g_{il.} g_{kj.} ]
// with Ric_{kl.} = g^{ij.} R_{ij.kl.} and S = g^{kl.} Ric_{kl.}; a dot marks a
// conjugated (barred) index.

template <class G>
double bochner_norm(const G& g, const std::vector<double>& x, Backend b) {
  using C = std::complex<double>;
  std::size_t d = x.size(), m = d / 2;
  CurvatureAtPoint r = riemann_ricci(g, x, b);
  Mat<double> gm = g(x);
  const C I(0.0, 1.0);
  auto frame = [&](std::size_t i, bool bar) {
    std::vector<C> z(d, C(0.0, 0.0));
    double inv = 1.0 / std::sqrt(2.0);
    z[2 * i] = inv;
    z[2 * i + 1] = (bar ? I : -I) * inv;
    return z;
  };
  auto rc = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    std::vector<C> zi = frame(i, false), zj = frame(j, true), zk = frame(k, false),
                   zl = frame(l, true);
    C s(0.0, 0.0);
    for (std::size_t a = 0; a < d; ++a) {
      if (zi[a] == C(0.0, 0.0)) continue;
      for (std::size_t bb = 0; bb < d; ++bb) {
        if (zj[bb] == C(0.0, 0.0)) continue;
        for (std::size_t c = 0; c < d; ++c) {
          if (zk[c] == C(0.0, 0.0)) continue;
          for (std::size_t e = 0; e < d; ++e)
            s += zi[a] * zj[bb] * zk[c] * zl[e] * r.low(a, bb, c, e);
        }
      }
    }
    return s;
  };
  Mat<C> gC(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<C> zi = frame(i, false), zj = frame(j, true);
      C s(0.0, 0.0);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t bb = 0; bb < d; ++bb) s += zi[a] * zj[bb] * gm(a, bb);
      gC(i, j) = s;
    }
  std::vector<C> Rt(m * m * m * m);
  auto idx = [m](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return ((i * m + j) * m + k) * m + l;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) Rt[idx(i, j, k, l)] = rc(i, j, k, l);
  Mat<C> ginvC = inverse(gC);
  Mat<C> ric(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l) {
      C s(0.0, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s += ginvC(j, i) * Rt[idx(i, j, k, l)];
      ric(k, l) = s;
    }
  C S(0.0, 0.0);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l) S += ginvC(l, k) * ric(k, l);
  double mm = static_cast<double>(m);
  double norm2 = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          C B = Rt[idx(i, j, k, l)] -
                (gC(i, j) * ric(k, l) + ric(i, j) * gC(k, l) + gC(i, l) * ric(k, j) +
                 ric(i, l) * gC(k, j)) /
                    (mm + 2.0) +
                S * (gC(i, j) * gC(k, l) + gC(i, l) * gC(k, j)) /
                    ((mm + 1.0) * (mm + 2.0));
          norm2 += std::norm(B);
        }
  return std::sqrt(norm2);
}

}  // namespace qcc
