#include <cmath>

#include "doctest.h"
#include "qcclab/quat.hpp"

using namespace qcc;
using Q = Quaternion<double>;

namespace {
double qdist(const Q& a, const Q& b) { return (a - b).norm(); }
}  // namespace

TEST_CASE("Hamilton relations") {
  Q i = Q::unit(0), j = Q::unit(1), k = Q::unit(2), one = Q::real(1.0);
  CHECK(qdist(i * i, -one) == 0);
  CHECK(qdist(j * j, -one) == 0);
  CHECK(qdist(k * k, -one) == 0);
  CHECK(qdist(i * j, k) == 0);
  CHECK(qdist(j * k, i) == 0);
  CHECK(qdist(k * i, j) == 0);
  CHECK(qdist(j * i, -k) == 0);
  // (1+i)(1+j) = 1 + i + j + k
  CHECK(qdist((one + i) * (one + j), Q{1, 1, 1, 1}) == 0);
}

TEST_CASE("norm is multiplicative and conjugation reverses products") {
  Rng rng(7);
  for (int s = 0; s < 1000; ++s) {
    Q a = random_quaternion(rng), b = random_quaternion(rng);
    CHECK(std::fabs((a * b).norm() - a.norm() * b.norm()) < 1e-12 * a.norm() * b.norm());
    CHECK(qdist((a * b).conj(), b.conj() * a.conj()) < 1e-12);
    CHECK(qdist(a * a.inverse(), Q::real(1.0)) < 1e-12);
  }
}

TEST_CASE("Sp(1) -> SO(3): examples and homomorphism") {
  // alpha = +-1 acts as the identity rotation
  for (double sgn : {1.0, -1.0}) {
    auto m = so3_from_unit(UnitQuaternion(Q::real(sgn)));
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) CHECK(m[b][g] == doctest::Approx(b == g ? 1.0 : 0.0));
  }
  // alpha = (1+i)/sqrt2: i -> i, j -> k, k -> -j
  auto m = so3_from_unit(UnitQuaternion::normalized(Q{1, 1, 0, 0}));
  CHECK(m[0][0] == doctest::Approx(1.0));
  CHECK(m[1][2] == doctest::Approx(1.0));
  CHECK(m[2][1] == doctest::Approx(-1.0));
  CHECK(std::fabs(m[0][1]) + std::fabs(m[0][2]) + std::fabs(m[1][0]) +
            std::fabs(m[1][1]) + std::fabs(m[2][0]) + std::fabs(m[2][2]) <
        1e-12);
  // the rows store the transpose of the rotation matrix, so the row-matrix of
  // a product composes in reverse: rows(alpha beta) = rows(beta) rows(alpha)
  Rng rng(11);
  for (int s = 0; s < 200; ++s) {
    UnitQuaternion a = random_unit_quaternion(rng), b = random_unit_quaternion(rng);
    auto ra = so3_from_unit(a), rb = so3_from_unit(b);
    auto rab = so3_from_unit(UnitQuaternion::normalized(a.q * b.q));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double s2 = 0;
        for (int m2 = 0; m2 < 3; ++m2) s2 += rb[r][m2] * ra[m2][c];
        CHECK(std::fabs(rab[r][c] - s2) < 1e-12);
      }
  }
}

TEST_CASE("rotation rows are orthonormal") {
  Rng rng(13);
  for (int s = 0; s < 200; ++s) {
    auto m = so3_from_unit(random_unit_quaternion(rng));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double dot = 0;
        for (int k = 0; k < 3; ++k) dot += m[r][k] * m[c][k];
        CHECK(std::fabs(dot - (r == c ? 1.0 : 0.0)) < 1e-12);
      }
  }
}

TEST_CASE("axis_exp matches cos + i sin") {
  double th = 0.83;
  Q q = axis_exp(1, th);
  CHECK(q.w == doctest::Approx(std::cos(th)));
  CHECK(q.y == doctest::Approx(std::sin(th)));
  CHECK(q.x == 0.0);
  CHECK(q.z == 0.0);
}

TEST_CASE("random_sp_n: deterministic, symplectic, norm preserving") {
  auto A1 = random_sp_n(42, 2);
  auto A2 = random_sp_n(42, 2);
  for (std::size_t i = 0; i < A1.a.size(); ++i) CHECK(qdist(A1.a[i], A2.a[i]) == 0);
  CHECK(A1.symplectic_defect() < 1e-12);
  Rng rng(17);
  for (int s = 0; s < 100; ++s) {
    auto A = random_sp_n(rng, 2);
    CHECK(A.symplectic_defect() < 1e-12);
    QVector<double> z(2);
    z[0] = random_quaternion(rng);
    z[1] = random_quaternion(rng);
    CHECK(std::fabs((A * z).norm2() - z.norm2()) < 1e-10 * (1.0 + z.norm2()));
  }
}

TEST_CASE("hermitian inner product: sesquilinearity over H") {
  Rng rng(19);
  QVector<double> z(2), w(2);
  for (auto& q : z.e) q = random_quaternion(rng);
  for (auto& q : w.e) q = random_quaternion(rng);
  Q lam = random_quaternion(rng);
  // <z lam, w> = conj(lam) <z, w> and <z, w lam> = <z, w> lam
  CHECK(qdist(herm_inner(z.rmul(lam), w), lam.conj() * herm_inner(z, w)) < 1e-12);
  CHECK(qdist(herm_inner(z, w.rmul(lam)), herm_inner(z, w) * lam) < 1e-12);
  CHECK(qdist(herm_inner(z, w).conj(), herm_inner(w, z)) < 1e-13);
}
