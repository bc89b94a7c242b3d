#include <cmath>

#include "doctest.h"
#include "qcclab/metric.hpp"

using namespace qcc;
using Q = Quaternion<double>;

namespace {

MPoint<double> sample_point(Rng& rng, std::size_t n) {
  MPoint<double> p;
  for (auto& c : p.t) c = rng.uniform(-2, 2);
  p.z = QVector<double>(n);
  for (auto& q : p.z.e) q = random_quaternion(rng);
  return p;
}

MTangent<double> coordinate_tangent(std::size_t n, int idx) {
  // idx 0..2 -> dt, 3.. -> dz coordinates
  MTangent<double> v(n);
  if (idx < 3) v.dt[idx] = 1.0;
  else v.dz[idx - 3] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("d omega_1(d/dx1, d/dx2) = 2 fixes the sign convention") {
  MPoint<double> p = MPoint<double>::origin(1);
  CHECK(d_omega_eval(1, p, coordinate_tangent(1, 3), coordinate_tangent(1, 4)) ==
        doctest::Approx(2.0));
  CHECK(d_omega_eval(1, p, coordinate_tangent(1, 4), coordinate_tangent(1, 3)) ==
        doctest::Approx(-2.0));
  // d omega_2(d/dx1, d/dx3) = 2 and d omega_3(d/dx1, d/dx4) = 2
  CHECK(d_omega_eval(2, p, coordinate_tangent(1, 3), coordinate_tangent(1, 5)) ==
        doctest::Approx(2.0));
  CHECK(d_omega_eval(3, p, coordinate_tangent(1, 3), coordinate_tangent(1, 6)) ==
        doctest::Approx(2.0));
}

TEST_CASE("omega_1(xi_1) = 1 + a|z|^2") {
  Rng rng(41);
  double a = 0.9;
  for (int s = 0; s < 200; ++s) {
    MPoint<double> p = sample_point(rng, 2);
    double lhs = omega_eval(1, p, xi_field(1, p, a));
    CHECK(lhs == doctest::Approx(1.0 + a * p.z.norm2()).epsilon(1e-12));
    CHECK(eta_eval(1, a, p, xi_field(1, p, a)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("df_eval matches a dual-number derivative of f") {
  Rng rng(43);
  double a = 1.4;
  for (int s = 0; s < 100; ++s) {
    MPoint<double> p = sample_point(rng, 1);
    MTangent<double> V(1);
    for (auto& c : V.dt) c = rng.normal();
    for (auto& c : V.dz) c = rng.normal();
    // push duals through f along V
    MPoint<Dual<double>> pd;
    for (int i = 0; i < 3; ++i) pd.t[i] = Dual<double>(p.t[i], V.dt[i]);
    std::vector<Dual<double>> zf(4);
    auto zflat = p.z.flat();
    for (int i = 0; i < 4; ++i) zf[i] = Dual<double>(zflat[i], V.dz[i]);
    pd.z = QVector<Dual<double>>::from_flat(zf);
    Dual<double> fd = f_eval(a, pd);
    CHECK(std::fabs(fd.b - df_eval(a, p, V)) < 1e-12);
  }
}

TEST_CASE("horizontal lift is horizontal and projects back") {
  Rng rng(47);
  for (int s = 0; s < 200; ++s) {
    MPoint<double> p = sample_point(rng, 2);
    QVector<double> v(2);
    for (auto& q : v.e) q = random_quaternion(rng);
    MTangent<double> V = horizontal_lift(p, v);
    CHECK(horizontal_defect(p, V) < 1e-12);
    CHECK(std::sqrt((V.zq() - v).norm2()) == 0.0);
  }
}

TEST_CASE("explicit basis of D is annihilated by all omega_alpha") {
  Rng rng(53);
  for (int s = 0; s < 100; ++s) {
    MPoint<double> p = sample_point(rng, 2);
    for (const auto& v : d_basis(p))
      for (int alpha = 1; alpha <= 3; ++alpha)
        CHECK(std::fabs(omega_eval(alpha, p, v)) < 1e-12);
  }
}

TEST_CASE("J relations on D") {
  Rng rng(59);
  for (int s = 0; s < 200; ++s) {
    MPoint<double> p = sample_point(rng, 1);
    QVector<double> v(1);
    v[0] = random_quaternion(rng);
    MTangent<double> X = horizontal_lift(p, v);
    MTangent<double> j1j2 = j_on_D(1, p, j_on_D(2, p, X));
    CHECK((j1j2 - j_on_D(3, p, X)).max_abs() < 1e-13);
    MTangent<double> jj = j_on_D(2, p, j_on_D(2, p, X));
    CHECK((jj + X).max_abs() < 1e-13);
  }
}

TEST_CASE("metric normalization constant is 2 and the metric is conformal") {
  for (double a : {0.5, 1.0, 2.0}) {
    CHECK(metric_normalization(1, a) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(metric_normalization(2, a) == doctest::Approx(2.0).epsilon(1e-13));
  }
  Rng rng(61);
  double a = 1.1;
  for (int s = 0; s < 200; ++s) {
    QVector<double> z(2), x(2), y(2);
    for (auto& q : z.e) q = random_quaternion(rng);
    for (auto& q : x.e) q = random_quaternion(rng);
    for (auto& q : y.e) q = random_quaternion(rng);
    double g = metric_eval(a, z, x, y);
    double expect = real_inner(x, y) / (1.0 + a * z.norm2());
    CHECK(std::fabs(g - expect) < 1e-12 * (1.0 + std::fabs(expect)));
  }
}

TEST_CASE("tau_alpha preserves |z| and tau_1 is -id on a|z|^2 = 2 pi") {
  Rng rng(67);
  double a = 1.0;
  for (int s = 0; s < 100; ++s) {
    QVector<double> z(2);
    for (auto& q : z.e) q = random_quaternion(rng);
    for (int alpha = 1; alpha <= 3; ++alpha) {
      CHECK(std::fabs(tau(alpha, a, z).norm2() - z.norm2()) < 1e-10);
      CHECK(std::sqrt((tau_inv(alpha, a, tau(alpha, a, z)) - z).norm2()) < 1e-12);
    }
  }
  // |z|^2 = 2 pi / a  ->  e^{i a |z|^2 / 2} = e^{i pi} = -1
  QVector<double> z(1);
  z[0] = Q::real(std::sqrt(2.0 * M_PI));
  QVector<double> t = tau(1, 1.0, z);
  CHECK((t[0] + z[0]).norm() < 1e-12);
}

TEST_CASE("dtau is the differential of tau (dual check)") {
  Rng rng(71);
  double a = 0.8;
  for (int alpha = 1; alpha <= 3; ++alpha)
    for (int s = 0; s < 50; ++s) {
      QVector<double> z(1), v(1);
      z[0] = random_quaternion(rng);
      v[0] = random_quaternion(rng);
      auto zf = z.flat();
      auto vf = v.flat();
      std::vector<Dual<double>> zd(4);
      for (int i = 0; i < 4; ++i) zd[i] = Dual<double>(zf[i], vf[i]);
      auto td = tau(alpha, a, QVector<Dual<double>>::from_flat(zd)).flat();
      auto an = dtau(alpha, a, z, v).flat();
      for (int i = 0; i < 4; ++i) CHECK(std::fabs(td[i].b - an[i]) < 1e-12);
    }
}

TEST_CASE("Omega_1 at the origin of H^1 equals d eta_1 there") {
  double a = 1.0;
  QVector<double> u(1);
  u[0] = Q{0.3, 0.1, -0.2, 0.4};
  QVector<double> e1(1), e2(1);
  e1[0] = Q::real(1.0);
  e2[0] = Q::unit(0);
  // at u = 0 the preimage is the origin and Omega_1(e1, e2) = d omega_1 = 2
  QVector<double> zero(1);
  CHECK(omega_descended(1, a, zero, e1, e2) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("pi_alpha is invariant along the rho_alpha orbits") {
  Rng rng(73);
  double a = 1.6;
  for (int alpha = 1; alpha <= 3; ++alpha)
    for (int s = 0; s < 100; ++s) {
      MPoint<double> p = sample_point(rng, 2);
      SolvableIndex idx(alpha, {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)});
      QVector<double> u1 = pi_alpha(alpha, a, p);
      QVector<double> u2 = pi_alpha(alpha, a, rho_act(idx, p, a));
      CHECK(std::sqrt((u1 - u2).norm2()) < 1e-12);
    }
}

TEST_CASE("pi_alpha_preimage solves the constrained lift") {
  Rng rng(79);
  double a = 0.6;
  for (int alpha = 1; alpha <= 3; ++alpha)
    for (int s = 0; s < 100; ++s) {
      MPoint<double> p = sample_point(rng, 1);
      QVector<double> u(1);
      u[0] = random_quaternion(rng);
      MTangent<double> X = pi_alpha_preimage(alpha, a, p, u);
      CHECK(horizontal_defect(p, X) < 1e-12);
      QVector<double> push = pi_alpha_diff(alpha, a, p, X);
      CHECK(std::sqrt((push - u).norm2()) < 1e-11);
    }
}
