#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfv/sampling.hpp"
#include "pfv/variety.hpp"

#include <cmath>
#include <stdexcept>

using namespace pfv;

TEST_CASE("spec validation") {
  CHECK_NOTHROW(VarietySpec(4, 1));
  CHECK_NOTHROW(VarietySpec(10, 4));
  CHECK_NOTHROW(VarietySpec(6, 0));
  CHECK_THROWS_AS(VarietySpec(4, 2), std::invalid_argument);  // 2r > n - 2
  CHECK_THROWS_AS(VarietySpec(3, -1), std::invalid_argument);
  CHECK_THROWS_AS(VarietySpec(1, 0), std::invalid_argument);
}

TEST_CASE("dimension and codimension formulas") {
  const VarietySpec s(6, 2);
  CHECK(s.dimension() == 2 * 3 + 4 * 2);  // r(2r-1) + 2r(n-2r)
  CHECK(s.codimension() == 1);
  for (int n = 2; n <= 12; ++n)
    for (int r = 0; 2 * r <= n - 2; ++r) {
      const VarietySpec spec(n, r);
      CHECK(spec.dimension() + spec.codimension() == n * (n - 1) / 2);
    }
  // hypersurface and codimension-3 families
  for (int m = 2; m <= 6; ++m) {
    CHECK(VarietySpec(2 * m, m - 1).codimension() == 1);
    CHECK(VarietySpec(2 * m + 1, m - 1).codimension() == 3);
  }
}

TEST_CASE("membership by rank and by pfaffian minors agree") {
  const VarietySpec spec(6, 2);
  Rng rng(3);
  for (int k = 0; k <= 3; ++k) {
    const SkewMatrix m = sample_member(rng, 6, k);
    const bool want = k <= 2;
    CHECK(contains_rank(spec, m) == want);
    CHECK(contains_pfaffian(spec, m) == want);
  }
}

TEST_CASE("membership is scale invariant") {
  const VarietySpec spec(5, 1);
  Rng rng(4);
  const SkewMatrix member = sample_member(rng, 5, 1);
  const SkewMatrix outside = sample_member(rng, 5, 2);
  for (double s : {1e-8, 1e-3, 1.0, 1e5}) {
    CHECK(contains_rank(spec, s * member));
    CHECK(contains_pfaffian(spec, s * member));
    CHECK_FALSE(contains_rank(spec, s * outside));
    CHECK_FALSE(contains_pfaffian(spec, s * outside));
  }
}

TEST_CASE("projection drops the smallest pairs") {
  // 3 X01 + X23 in dimension 4: nearest rank-2 point is 3 X01, distance 1.
  SkewMatrix m = SkewMatrix::zero(4);
  m.set(0, 1, 3.0);
  m.set(2, 3, 1.0);
  const VarietySpec spec(4, 1);
  const Projection p = project(spec, m);
  CHECK(p.unique);
  CHECK(p.point(0, 1) == doctest::Approx(3.0));
  CHECK(p.point(2, 3) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((m - p.point).norm() == doctest::Approx(1.0));
  CHECK(distance(spec, m) == doctest::Approx(1.0));
}

TEST_CASE("tied pairs mark the projection as non-unique") {
  SkewMatrix m = SkewMatrix::zero(4);
  m.set(0, 1, 1.0);
  m.set(2, 3, 1.0);
  const Projection p = project(VarietySpec(4, 1), m);
  CHECK_FALSE(p.unique);
  CHECK(distance(VarietySpec(4, 1), m) == doctest::Approx(1.0));
}

TEST_CASE("projection of a member is itself") {
  Rng rng(8);
  const VarietySpec spec(7, 2);
  const SkewMatrix m = sample_member(rng, 7, 2);
  const Projection p = project(spec, m);
  CHECK((m - p.point).norm() == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(distance(spec, m) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("pythagorean split of the projection") {
  Rng rng(9);
  const VarietySpec spec(6, 1);
  const SkewMatrix m = random_skew(6, 10);
  const Projection p = project(spec, m);
  const double d = distance(spec, m);
  CHECK(d * d + p.point.squared_norm() == doctest::Approx(m.squared_norm()).epsilon(1e-12));
}

TEST_CASE("stratum reports the rank") {
  Rng rng(12);
  CHECK(stratum(sample_member(rng, 8, 3)) == 6);
  CHECK(stratum(sample_member(rng, 8, 1)) == 2);
  CHECK(stratum(SkewMatrix::zero(8)) == 0);
}
