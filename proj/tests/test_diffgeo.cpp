#include <cmath>

#include "doctest.h"
#include "qcclab/diffgeo.hpp"
#include "qcclab/metric.hpp"
#include "qcclab/rng.hpp"

using namespace qcc;

namespace {

struct FlatMetric {
  std::size_t d;
  std::size_t dim() const { return d; }
  template <class T>
  Mat<T> operator()(const std::vector<T>& x) const {
    Mat<T> g(x.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g(i, i) = T(1);
    return g;
  }
};

// round 2-sphere of radius r in polar coordinates (theta, phi)
struct SphereMetric {
  double r;
  std::size_t dim() const { return 2; }
  template <class T>
  Mat<T> operator()(const std::vector<T>& x) const {
    Mat<T> g(2, 2);
    T s = sin(x[0]);
    g(0, 0) = T(r * r);
    g(1, 1) = r * r * s * s;
    return g;
  }
};

// shared conformal factor for the e^{2 phi} delta test metric
struct TestPhi {
  template <class T>
  T operator()(const std::vector<T>& x) const {
    return 0.3 * sin(x[0]) + 0.2 * x[1] * x[2] + 0.1 * x[3] * x[3] + 0.05 * x[0] * x[3];
  }
};

struct ConformalTestMetric {
  TestPhi phi;
  std::size_t dim() const { return 4; }
  template <class T>
  Mat<T> operator()(const std::vector<T>& x) const {
    T e = exp(2.0 * phi(x));
    Mat<T> g(4, 4);
    for (std::size_t i = 0; i < 4; ++i) g(i, i) = e;
    return g;
  }
};

// Fubini-Study metric on the affine chart of CP^m in real coordinates
// (x_0, y_0, ..., x_{m-1}, y_{m-1}); h_{ij} = delta_ij / d - conj(z_i) z_j / d^2
// with d = 1 + |z|^2, realified as G(xx) = G(yy) = 2 Re h, G(xy) = 2 Im h.
// Constant holomorphic sectional curvature, hence Bochner-flat.
struct FubiniStudyMetric {
  std::size_t m;
  std::size_t dim() const { return 2 * m; }
  template <class T>
  Mat<T> operator()(const std::vector<T>& x) const {
    T r2{};
    for (const auto& v : x) r2 += v * v;
    T den = 1.0 + r2;
    T den2 = den * den;
    Mat<T> g(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        T re = (x[2 * i] * x[2 * j] + x[2 * i + 1] * x[2 * j + 1]) / den2;
        T im = (x[2 * i] * x[2 * j + 1] - x[2 * i + 1] * x[2 * j]) / den2;
        T reh = (i == j ? T(1) / den : T{}) - re;
        g(2 * i, 2 * j) = 2.0 * reh;
        g(2 * i + 1, 2 * j + 1) = 2.0 * reh;
        g(2 * i, 2 * j + 1) = -2.0 * im;
        g(2 * i + 1, 2 * j) = 2.0 * im;
      }
    return g;
  }
};

// conformal factor of the main family, phi = -log(1 + a r^2)/2
struct FamilyPhi {
  double a;
  template <class T>
  T operator()(const std::vector<T>& x) const {
    T r2{};
    for (const auto& v : x) r2 += v * v;
    return -0.5 * log(1.0 + a * r2);
  }
};

}  // namespace

TEST_CASE("flat metric: zero Christoffel, curvature, trivial holonomy") {
  FlatMetric g{3};
  std::vector<double> x{0.3, -0.7, 1.1};
  for (Backend b : {Backend::dual, Backend::fd}) {
    auto c = christoffel(g, x, b);
    for (double v : c.c) CHECK(std::fabs(v) < 1e-12);
    auto r = riemann_ricci(g, x, b);
    CHECK(std::sqrt(r.riemann_norm2()) < 1e-9);
    CHECK(r.ricci.max_abs() < 1e-9);
    Mat<double> P = parallel_transport(g, rectangle_loop(x, 0, 1, 0.2), b, 40);
    CHECK((P - Mat<double>::identity(3)).max_abs() < 1e-12);
  }
}

TEST_CASE("sphere: scalar curvature 2/r^2 and curvature symmetries") {
  for (double r : {1.0, 2.0}) {
    SphereMetric g{r};
    std::vector<double> x{1.0, 0.4};
    for (Backend b : {Backend::dual, Backend::fd}) {
      auto cur = riemann_ricci(g, x, b);
      CHECK(cur.scalar == doctest::Approx(2.0 / (r * r)).epsilon(1e-5));
      CHECK(curvature_symmetry_defect(cur) < 1e-5);
    }
  }
}

TEST_CASE("conformal oracle agrees with the generic curvature path") {
  ConformalTestMetric g;
  ConformalOracle<TestPhi> oracle{g.phi, 4};
  std::vector<double> x{0.4, -0.2, 0.7, 0.1};
  auto c_oracle = oracle.christoffel(x);
  auto ric_oracle = oracle.ricci(x);
  for (Backend b : {Backend::dual, Backend::fd}) {
    auto c = christoffel(g, x, b);
    double worst = 0;
    for (std::size_t i = 0; i < c.c.size(); ++i)
      worst = std::max(worst, std::fabs(c.c[i] - c_oracle.c[i]));
    CHECK(worst < 1e-5);
    auto cur = riemann_ricci(g, x, b);
    CHECK((cur.ricci - ric_oracle).max_abs() < 1e-5);
  }
}

TEST_CASE("main metric family: generic path vs conformal oracle") {
  // g_a = f delta = e^{2 phi} delta with phi = -log(1 + a r^2)/2
  double a = 1.3;
  MetricField g{1, a};
  ConformalOracle<FamilyPhi> oracle{FamilyPhi{a}, 4};
  Rng rng(83);
  for (int s = 0; s < 20; ++s) {
    std::vector<double> x(4);
    for (auto& v : x) v = rng.uniform(-1.5, 1.5);
    auto ric_oracle = oracle.ricci(x);
    auto cur = riemann_ricci(g, x, Backend::dual);
    CHECK((cur.ricci - ric_oracle).max_abs() < 1e-9);
    auto cur_fd = riemann_ricci(g, x, Backend::fd);
    CHECK((cur_fd.ricci - ric_oracle).max_abs() < 1e-5);
  }
}

TEST_CASE("backend agreement on Christoffel symbols") {
  MetricField g{2, 0.7};
  Rng rng(89);
  for (int s = 0; s < 10; ++s) {
    std::vector<double> x(8);
    for (auto& v : x) v = rng.uniform(-1, 1);
    auto cd = christoffel(g, x, Backend::dual);
    auto cf = christoffel(g, x, Backend::fd);
    double worst = 0;
    for (std::size_t i = 0; i < cd.c.size(); ++i)
      worst = std::max(worst, std::fabs(cd.c[i] - cf.c[i]));
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("parallel transport preserves the metric") {
  MetricField g{1, 1.0};
  std::vector<double> base{0.5, 0.1, -0.2, 0.3};
  Mat<double> G = g(base);
  for (Backend b : {Backend::dual, Backend::fd}) {
    Mat<double> P = parallel_transport(g, rectangle_loop(base, 0, 2, 0.15), b, 80);
    CHECK((P.transpose() * G * P - G).max_abs() < 1e-8);
  }
}

TEST_CASE("geodesics: straight lines when flat, conserved speed in general") {
  FlatMetric flat{2};
  auto r1 = geodesic(flat, {0.0, 0.0}, {0.3, -0.4}, 1.0, Backend::dual);
  CHECK(r1.finite);
  CHECK(r1.x[0] == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(r1.x[1] == doctest::Approx(-0.4).epsilon(1e-10));
  MetricField g{1, 0.8};
  auto r2 = geodesic(g, {0.2, 0.0, 0.1, 0.0}, {0.5, 0.2, -0.1, 0.4}, 2.0, Backend::dual);
  CHECK(r2.finite);
  CHECK(r2.speed_drift < 1e-8);
}

TEST_CASE("numeric exterior derivative of a polynomial 2-form") {
  // omega = x_0 dx_1 ^ dx_2: d omega = dx_0 ^ dx_1 ^ dx_2
  auto omega = [](const auto& xx, const std::vector<double>& p,
                  const std::vector<double>& q) {
    return xx[0] * (p[1] * q[2] - p[2] * q[1]);
  };
  std::vector<double> x{0.3, 0.1, -0.9};
  std::vector<double> u{1.0, 0.5, 0.2}, v{0.0, 1.0, -0.3}, w{0.4, 0.0, 1.0};
  double det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
               u[2] * (v[0] * w[1] - v[1] * w[0]);
  CHECK(numeric_d2(omega, x, u, v, w, Backend::dual) == doctest::Approx(det).epsilon(1e-12));
  CHECK(numeric_d2(omega, x, u, v, w, Backend::fd) == doctest::Approx(det).epsilon(1e-8));
  // a closed 2-form: omega = dx_0 ^ dx_1 with constant coefficients
  auto closed = [](const auto& xx, const std::vector<double>& p,
                   const std::vector<double>& q) {
    using T = std::decay_t<decltype(xx[0])>;
    (void)xx;
    return T(p[0] * q[1] - p[1] * q[0]);
  };
  CHECK(std::fabs(numeric_d2(closed, x, u, v, w, Backend::dual)) < 1e-12);
}

TEST_CASE("Bochner norm: flat metric and Fubini-Study are Bochner-flat") {
  FlatMetric flat{4};
  std::vector<double> x0{0.1, -0.2, 0.3, 0.4};
  CHECK(bochner_norm(flat, x0, Backend::dual) < 1e-8);

  FubiniStudyMetric fs{2};
  Rng rng(97);
  for (int s = 0; s < 5; ++s) {
    std::vector<double> x(4);
    for (auto& v : x) v = rng.uniform(-0.8, 0.8);
    CHECK(bochner_norm(fs, x, Backend::dual) < 1e-7);
    CHECK(bochner_norm(fs, x, Backend::fd) < 1e-4);
  }
}

TEST_CASE("Fubini-Study m=2 has nonzero curvature (the Bochner check is not vacuous)") {
  FubiniStudyMetric fs{2};
  std::vector<double> x{0.3, -0.1, 0.2, 0.4};
  auto cur = riemann_ricci(fs, x, Backend::dual);
  CHECK(std::sqrt(cur.riemann_norm2()) > 0.1);
}
