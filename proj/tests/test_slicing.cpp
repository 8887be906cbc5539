#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfv/errors.hpp"
#include "pfv/sampling.hpp"
#include "pfv/slicing.hpp"

#include <cmath>
#include <stdexcept>

using namespace pfv;

namespace {

SkewMatrix wedge_ambient(const Eigen::MatrixXd& q, const std::vector<double>& x, double t,
                         const SkewMatrix& b) {
  const int n = q.rows();
  const int r = static_cast<int>(x.size());
  SkewMatrix h = pair_matrix(n, x);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = i + 1; j < b.dim(); ++j) h.set(2 * r + i, 2 * r + j, t * b(i, j));
  return h.conjugated(q);
}

}  // namespace

TEST_CASE("slice decomposition round trips a constructed interior point") {
  Rng rng(5);
  const Eigen::MatrixXd q = random_special_orthogonal(6, 50);
  const std::vector<double> x = {2.0, 1.0};
  const SkewMatrix b = sample_unit_normal_block(rng, 2, 1);
  const SkewMatrix m = wedge_ambient(q, x, 0.4, b);

  const auto chart = slice_decompose(m, 2);
  REQUIRE(chart.has_value());
  CHECK(chart->n() == 6);
  CHECK(chart->r() == 2);
  CHECK(chart->x[0] == doctest::Approx(2.0));
  CHECK(chart->x[1] == doctest::Approx(1.0));
  CHECK((chart->ambient() - m).norm() == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(chart->q.determinant() == doctest::Approx(1.0));
  CHECK(chart->normal.norm() == doctest::Approx(0.4));
}

TEST_CASE("slice decomposition refuses degenerate inputs") {
  // coincident slice values: the gap condition fails
  const SkewMatrix tied = pair_matrix(6, {1.0, 1.0});
  CHECK_FALSE(slice_decompose(tied, 2).has_value());

  // residual as large as the smallest slice value: not interior
  SkewMatrix big = pair_matrix(6, {2.0, 1.0});
  big.set(4, 5, 1.0);
  CHECK_FALSE(slice_decompose(big, 2).has_value());

  // rank too low for r slices
  CHECK_FALSE(slice_decompose(pair_matrix(6, {2.0}), 2).has_value());

  CHECK_THROWS_AS(slice_decompose(pair_matrix(6, {2.0, 1.0}), 0), std::invalid_argument);
  CHECK_THROWS_AS(slice_decompose(pair_matrix(6, {2.0, 1.0}), 3), std::invalid_argument);
}

TEST_CASE("same slicing set accepts itself and isotropy conjugates") {
  Rng rng(6);
  const Eigen::MatrixXd q = random_special_orthogonal(7, 60);
  const std::vector<double> x = {3.0, 1.2};
  const SkewMatrix b = sample_unit_normal_block(rng, 3);
  const SkewMatrix m = wedge_ambient(q, x, 0.5, b);
  const auto chart = slice_decompose(m, 2);
  REQUIRE(chart.has_value());
  CHECK(same_slicing_set(*chart, *chart));

  // conjugate the frame by a block isotropy element
  Eigen::MatrixXd iso = Eigen::MatrixXd::Zero(7, 7);
  for (int i = 0; i < 2; ++i) {
    const double th = 0.7 + i;
    iso(2 * i, 2 * i) = std::cos(th);
    iso(2 * i, 2 * i + 1) = std::sin(th);
    iso(2 * i + 1, 2 * i) = -std::sin(th);
    iso(2 * i + 1, 2 * i + 1) = std::cos(th);
  }
  iso.block(4, 4, 3, 3) = random_special_orthogonal(3, 61);
  SliceChart twin = *chart;
  twin.q = chart->q * iso;
  CHECK(same_slicing_set(*chart, twin));

  // a generic frame rotation is a different slicing set
  SliceChart other = *chart;
  other.q = chart->q * random_special_orthogonal(7, 62);
  CHECK_FALSE(same_slicing_set(*chart, other));

  SliceChart wrong_r = *chart;
  wrong_r.x.pop_back();
  CHECK_THROWS_AS(same_slicing_set(*chart, wrong_r), std::invalid_argument);
}

TEST_CASE("secondary level values follow the hyperbola relation") {
  const SecondaryLevel level = secondary_level({2.0, 1.0}, 0.6);
  REQUIRE(level.r() == 2);
  CHECK(level.c[0] == doctest::Approx(std::sqrt(3.64)));
  CHECK(level.c[1] == doctest::Approx(0.8));
  CHECK(level.level(0) == doctest::Approx(3.64 / 2.0));
  CHECK(level.level(1) == doctest::Approx(0.32));

  // moving along the level keeps c fixed: x_i(t) = sqrt(c_i^2 + t^2)
  Rng rng(7);
  const SkewMatrix b = sample_unit_normal_block(rng, 2, 1);
  const WedgePoint moved = secondary_point(level, 1.7, b);
  CHECK(moved.x[0] == doctest::Approx(std::sqrt(3.64 + 1.7 * 1.7)));
  CHECK(moved.x[1] == doctest::Approx(std::sqrt(0.64 + 1.7 * 1.7)));
  const SecondaryLevel back = secondary_level(moved.x, moved.t);
  CHECK(back.c[0] == doctest::Approx(level.c[0]));
  CHECK(back.c[1] == doctest::Approx(level.c[1]));
}

TEST_CASE("secondary level construction guards the focal radius") {
  CHECK_THROWS_AS(secondary_level({2.0, 1.0}, 1.0), FocalRadiusError);
  CHECK_THROWS_AS(secondary_level({2.0, 1.0}, -1.5), FocalRadiusError);
  SecondaryLevel degenerate;
  degenerate.c = {1.0, 0.0};
  Rng rng(8);
  const SkewMatrix b = sample_unit_normal_block(rng, 2, 1);
  CHECK_THROWS_AS(secondary_point(degenerate, 0.5, b), DegenerateLevelError);
  SecondaryLevel empty;
  CHECK_THROWS_AS(secondary_point(empty, 0.5, b), DegenerateLevelError);
}

TEST_CASE("secondary weight worked value and velocity oracle") {
  CHECK(weight_secondary({2.0, 1.0}, 0.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(weight_secondary({2.0, 1.0}, 1.0), FocalRadiusError);

  // oracle: w2 = 1 / (prod x_i * sqrt(1 + |dx/dt|^2)) with x_i(t) on the level
  const std::vector<double> x = {2.0, 1.0};
  const double t = 0.6;
  const SecondaryLevel level = secondary_level(x, t);
  const double h = 1e-5;
  double speed2 = 1.0;
  double prod = 1.0;
  for (int i = 0; i < 2; ++i) {
    const double xp = std::sqrt(level.c[i] * level.c[i] + (t + h) * (t + h));
    const double xm = std::sqrt(level.c[i] * level.c[i] + (t - h) * (t - h));
    const double v = (xp - xm) / (2.0 * h);
    speed2 += v * v;
    prod *= std::sqrt(level.c[i] * level.c[i] + t * t);
  }
  const double oracle = 1.0 / (prod * std::sqrt(speed2));
  CHECK(weight_secondary(x, t) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("composite inequality holds iff the exponent regime allows it") {
  // n - 2r = 3: holds with equality only at t = 0
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> c = {std::exp(rng.uniform(-1.0, 1.0)),
                             std::exp(rng.uniform(-1.0, 1.0))};
    const double t = rng.uniform(-3.0, 3.0);
    const CompositeInequality ineq = composite_inequality(7, 2, c, t);
    CHECK(ineq.ok);
    CHECK(ineq.log_lhs >= ineq.log_rhs - 1e-9);
  }
  const CompositeInequality at0 = composite_inequality(7, 2, {1.3, 0.6}, 0.0);
  CHECK(at0.log_lhs == doctest::Approx(at0.log_rhs));

  // n - 2r = 2: fails for any level once t moves
  const CompositeInequality bad = composite_inequality(6, 2, {1.0, 1.0}, 1.0);
  CHECK_FALSE(bad.ok);
  CHECK(bad.log_rhs > bad.log_lhs);
}

TEST_CASE("composite minimum sits at t = 0 exactly in the supported regime") {
  Rng rng(10);
  const std::vector<double> c = {1.5, 0.7};
  const SkewMatrix b = sample_unit_normal_block(rng, 3);
  std::vector<double> grid;
  for (int i = -80; i <= 80; ++i) grid.push_back(0.025 * i);
  const CompositeMinResult res = composite_min_check(7, 2, c, b, grid);
  CHECK(res.regime_supported);
  CHECK(res.argmin_t == 0.0);
  CHECK(res.min_value == doctest::Approx(res.value_at_0));
}

TEST_CASE("composite minimum escapes t = 0 in the hypersurface regime") {
  Rng rng(11);
  const std::vector<double> c = {1.4, 0.8};
  const SkewMatrix b = sample_unit_normal_block(rng, 2, 1);
  std::vector<double> grid;
  for (int i = -80; i <= 80; ++i) grid.push_back(0.025 * i);
  const CompositeMinResult res = composite_min_check(6, 2, c, b, grid);
  CHECK_FALSE(res.regime_supported);
  CHECK(std::abs(res.argmin_t) > 0.0);
  CHECK(res.min_value < res.value_at_0);
}

TEST_CASE("composite weight factors as wedge weight times secondary weight") {
  Rng rng(12);
  const std::vector<double> c = {2.0, 0.9};
  const SkewMatrix b = sample_unit_normal_block(rng, 3);
  const double t = 0.8;
  const SecondaryLevel level{std::vector<double>{2.0, 0.9}};
  const WedgePoint w = secondary_point(level, t, b);
  const double direct =
      weight_primary_wedge(w, 7, 2).exact * weight_secondary(w.x, w.t);
  CHECK(composite_weight(7, 2, c, b, t) == doctest::Approx(direct));
}
