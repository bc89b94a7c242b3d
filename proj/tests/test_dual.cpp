#include <cmath>

#include "doctest.h"
#include "qcclab/dual.hpp"

using qcc::Dual;

TEST_CASE("first derivatives are exact") {
  // f(x) = sin(x) exp(x) / (1 + x^2), f'(x) by hand
  auto f = [](auto x) { return sin(x) * exp(x) / (1.0 + x * x); };
  double x0 = 0.7;
  Dual<double> r = f(Dual<double>(x0, 1.0));
  double denom = 1.0 + x0 * x0;
  double expected = std::exp(x0) *
                    ((std::cos(x0) + std::sin(x0)) / denom -
                     std::sin(x0) * 2.0 * x0 / (denom * denom));
  CHECK(r.a == doctest::Approx(f(x0)).epsilon(1e-14));
  CHECK(r.b == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("sqrt and log chain rule") {
  auto f = [](auto x) { return sqrt(log(x) + x); };
  double x0 = 2.3;
  Dual<double> r = f(Dual<double>(x0, 1.0));
  double v = std::sqrt(std::log(x0) + x0);
  CHECK(r.a == doctest::Approx(v).epsilon(1e-14));
  CHECK(r.b == doctest::Approx((1.0 / x0 + 1.0) / (2.0 * v)).epsilon(1e-14));
}

TEST_CASE("nested duals give exact second derivatives") {
  // f(x) = x^3 sin(x); f'' = 6x sin x + 6x^2 cos x - x^3 sin x
  auto f = [](auto x) { return x * x * x * sin(x); };
  double x0 = 1.1;
  Dual<Dual<double>> x(Dual<double>(x0, 1.0), Dual<double>(1.0, 0.0));
  Dual<Dual<double>> r = f(x);
  double f2 = 6.0 * x0 * std::sin(x0) + 6.0 * x0 * x0 * std::cos(x0) -
              x0 * x0 * x0 * std::sin(x0);
  CHECK(r.a.a == doctest::Approx(x0 * x0 * x0 * std::sin(x0)).epsilon(1e-14));
  CHECK(r.b.b == doctest::Approx(f2).epsilon(1e-13));
}

TEST_CASE("division and mixed scalar arithmetic") {
  Dual<double> x(3.0, 1.0);
  Dual<double> y = 2.0 / x;  // d/dx (2/x) = -2/x^2
  CHECK(y.a == doctest::Approx(2.0 / 3.0));
  CHECK(y.b == doctest::Approx(-2.0 / 9.0));
  Dual<double> z = (x - 1.0) * (1.0 + x);  // x^2 - 1
  CHECK(z.a == doctest::Approx(8.0));
  CHECK(z.b == doctest::Approx(6.0));
}
