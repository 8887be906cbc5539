#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfv/skew.hpp"

#include <cmath>
#include <set>

using namespace pfv;

TEST_CASE("zero construction and entry access") {
  SkewMatrix m = SkewMatrix::zero(4);
  CHECK(m.dim() == 4);
  CHECK(m.norm() == 0.0);
  m.set(0, 2, 1.5);
  CHECK(m(0, 2) == doctest::Approx(1.5));
  CHECK(m(2, 0) == doctest::Approx(-1.5));
  CHECK(m(1, 1) == 0.0);
}

TEST_CASE("skew_part antisymmetrizes any square matrix") {
  Eigen::MatrixXd a(3, 3);
  a << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  const SkewMatrix s = SkewMatrix::skew_part(a);
  CHECK((s.mat() + s.mat().transpose()).norm() == doctest::Approx(0.0));
  CHECK(s(0, 1) == doctest::Approx((2.0 - 4.0) / 2.0));
}

TEST_CASE("norm is the half-trace metric") {
  const SkewMatrix m = random_skew(5, 11);
  const double direct = std::sqrt(0.5 * (m.mat() * m.mat().transpose()).trace());
  CHECK(m.norm() == doctest::Approx(direct));
  CHECK(inner(m, m) == doctest::Approx(m.squared_norm()));
}

TEST_CASE("inner product matches half trace of a b^T") {
  const SkewMatrix a = random_skew(6, 3);
  const SkewMatrix b = random_skew(6, 4);
  CHECK(inner(a, b) == doctest::Approx(0.5 * (a.mat() * b.mat().transpose()).trace()));
  CHECK(inner(a, b) == doctest::Approx(inner(b, a)));
}

TEST_CASE("basis matrices are orthonormal in the metric") {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const SkewMatrix e = basis_matrix(4, i, j);
      CHECK(e(i, j) == doctest::Approx(1.0));
      CHECK(e.norm() == doctest::Approx(1.0));
      for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l) {
          if (k == i && l == j) continue;
          CHECK(inner(e, basis_matrix(4, k, l)) == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("pair matrix places values on consecutive 2x2 blocks") {
  const SkewMatrix m = pair_matrix(5, {2.0, 1.0});
  CHECK(m(0, 1) == doctest::Approx(2.0));
  CHECK(m(2, 3) == doctest::Approx(1.0));
  CHECK(m(0, 2) == 0.0);
  CHECK(m(4, 0) == 0.0);
  CHECK(m.squared_norm() == doctest::Approx(4.0 + 1.0));
}

TEST_CASE("upper entries round trip") {
  const SkewMatrix m = random_skew(6, 99);
  const std::vector<double> upper = m.upper_entries();
  CHECK(upper.size() == 15);
  const SkewMatrix back = SkewMatrix::from_upper(6, upper);
  CHECK((back - m).norm() == doctest::Approx(0.0));
}

TEST_CASE("conjugation by orthogonal matrices preserves the metric") {
  const SkewMatrix m = random_skew(5, 21);
  const Eigen::MatrixXd q = random_special_orthogonal(5, 22);
  const SkewMatrix c = m.conjugated(q);
  CHECK(c.norm() == doctest::Approx(m.norm()));
  CHECK((c.mat() - q * m.mat() * q.transpose()).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("principal submatrix keeps selected rows and columns") {
  const SkewMatrix m = random_skew(5, 77);
  const SkewMatrix sub = m.principal_submatrix({0, 2, 4});
  CHECK(sub.dim() == 3);
  CHECK(sub(0, 1) == doctest::Approx(m(0, 2)));
  CHECK(sub(1, 2) == doctest::Approx(m(2, 4)));
}

TEST_CASE("rng streams are deterministic and de-correlated") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  Rng u(5);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform(2.0, 3.0);
    CHECK(v >= 2.0);
    CHECK(v < 3.0);
  }
  std::set<int> seen;
  for (int i = 0; i < 200; ++i) seen.insert(u.index(7));
  CHECK(seen.size() == 7);
}

TEST_CASE("random special orthogonal matrices have determinant one") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);
    const Eigen::MatrixXd q = random_special_orthogonal(n, seed);
    CHECK((q * q.transpose() - Eigen::MatrixXd::Identity(n, n)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(q.determinant() == doctest::Approx(1.0));
  }
}

TEST_CASE("random skew matrices are skew") {
  const SkewMatrix m = random_skew(7, 1234);
  CHECK((m.mat() + m.mat().transpose()).norm() == doctest::Approx(0.0));
  CHECK(m.norm() > 0.0);
}

TEST_CASE("arithmetic operators") {
  const SkewMatrix a = random_skew(4, 1);
  const SkewMatrix b = random_skew(4, 2);
  CHECK(((a + b) - a - b).norm() == doctest::Approx(0.0));
  CHECK((2.0 * a)(0, 1) == doctest::Approx(2.0 * a(0, 1)));
}
