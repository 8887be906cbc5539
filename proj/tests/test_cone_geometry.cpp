#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfv/cone_geometry.hpp"
#include "pfv/errors.hpp"
#include "pfv/sampling.hpp"
#include "pfv/variety.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

using namespace pfv;

TEST_CASE("tangent and normal basis orders cover the ambient space") {
  const auto tangent = tangent_basis_order(7, 2);
  const auto normal = normal_basis_order(7, 2);
  CHECK(static_cast<int>(tangent.size()) == VarietySpec(7, 2).dimension());
  CHECK(static_cast<int>(normal.size()) == VarietySpec(7, 2).codimension());
  // slice directions first
  CHECK(tangent[0] == std::pair<int, int>(0, 1));
  CHECK(tangent[1] == std::pair<int, int>(2, 3));
  for (const auto& [a, b] : normal) {
    CHECK(a >= 4);
    CHECK(b > a);
  }
}

TEST_CASE("closed-form slice weight at a worked value") {
  // x = (2, 1), n = 6, r = 2: (x1^2 - x2^2)^2 * (x1 x2)^4 = 9 * 16 = 144.
  CHECK(weight_primary({2.0, 1.0}, 6, 2) == doctest::Approx(144.0));
  CHECK(weight_primary({2.0}, 4, 1) == doctest::Approx(16.0));  // x^(2*(n-2r)) = 2^4
}

TEST_CASE("slice weight matches the finite-difference jacobian ratio") {
  for (auto [n, r] : {std::pair<int, int>{4, 1}, {5, 1}, {6, 2}}) {
    Rng rng(10 * n + r);
    const std::vector<double> x = sample_descending(rng, r);
    const double closed = weight_primary(x, n, r);
    const ParametrizationJacobian pj = parametrization_jacobian(x, n, r);
    const double numeric = pj.jacobian() / pj.restricted_jacobian();
    CHECK(numeric == doctest::Approx(closed).epsilon(1e-7));
  }
}

TEST_CASE("rotation generator blocks have the stated entries") {
  const std::vector<double> x = {3.0, 1.5};
  const ParametrizationJacobian pj = parametrization_jacobian(x, 6, 2);

  Eigen::Matrix4d g_want = Eigen::Matrix4d::Zero();
  const double xp = x[0], xq = x[1];
  g_want << 0, -xq, -xp, 0,
            xq, 0, 0, -xp,
            xp, 0, 0, -xq,
            0, xp, xq, 0;
  CHECK((pj.g_block(0, 1) - g_want).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(std::abs(pj.g_block(0, 1).determinant()) ==
        doctest::Approx(std::pow(xp * xp - xq * xq, 2)));

  const int m = 2;
  Eigen::MatrixXd h_want = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  h_want.topRightCorner(m, m) = -x[1] * Eigen::MatrixXd::Identity(m, m);
  h_want.bottomLeftCorner(m, m) = x[1] * Eigen::MatrixXd::Identity(m, m);
  CHECK((pj.h_block(1) - h_want).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(std::abs(pj.h_block(1).determinant()) ==
        doctest::Approx(std::pow(x[1], 2 * m)));
}

TEST_CASE("shape operator eigenvalues and trace") {
  const std::vector<double> x = {2.0};
  const SkewMatrix b = pair_matrix(2, {1.0});  // unit normal, single pair
  const ShapeOperator shape = shape_operator(x, b);
  const int dim = VarietySpec(4, 1).dimension();
  REQUIRE(shape.matrix.rows() == dim);
  CHECK(std::abs(shape.matrix.trace()) < 1e-14);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shape.matrix);
  // slice direction contributes 0; raising block contributes +-1/x twice
  CHECK(es.eigenvalues()(0) == doctest::Approx(-0.5));
  CHECK(es.eigenvalues()(1) == doctest::Approx(-0.5));
  CHECK(es.eigenvalues()(2) == doctest::Approx(0.0));
  CHECK(es.eigenvalues()(3) == doctest::Approx(0.5));
  CHECK(es.eigenvalues()(4) == doctest::Approx(0.5));
}

TEST_CASE("second fundamental form raising-pair dichotomy") {
  const std::vector<double> x = {2.0};
  const int n = 5, r = 1;
  // X_{0,2} with X_{1,3}: distinct raising targets -> -(1/x) X_{2,3}
  SkewMatrix ii = second_fundamental_numeric(x, n, r, {0, 2}, {1, 3});
  SkewMatrix want = SkewMatrix::zero(n);
  want.set(2, 3, -0.5);
  CHECK((ii - want).norm() == doctest::Approx(0.0).epsilon(1e-5));

  // swapped targets flip the sign
  ii = second_fundamental_numeric(x, n, r, {0, 3}, {1, 2});
  CHECK((ii + want).norm() == doctest::Approx(0.0).epsilon(1e-5));

  // same raising target -> zero
  ii = second_fundamental_numeric(x, n, r, {0, 2}, {1, 2});
  CHECK(ii.norm() == doctest::Approx(0.0).epsilon(1e-5));

  // slice direction against a raising direction -> zero
  ii = second_fundamental_numeric(x, n, r, {0, 1}, {0, 2});
  CHECK(ii.norm() == doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("determinant inequality check on the stated examples") {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(4, 4);
  s.diagonal() << 1, 1, 0, 0;
  Lemma47Result res = lemma47_check(s, 0.5);
  CHECK(res.lhs == doctest::Approx(0.25));
  CHECK(res.rhs == doctest::Approx(0.25));
  CHECK(res.ok);

  s.diagonal() << 0.5, 0.5, 0.5, 0.5;
  res = lemma47_check(s, 1.0);
  CHECK(res.lhs == doctest::Approx(0.0625));
  CHECK(res.rhs == doctest::Approx(0.0));
  CHECK(res.ok);

  // odd dimension with the mandatory zero eigenvalue
  Eigen::MatrixXd s5 = Eigen::MatrixXd::Zero(5, 5);
  s5.diagonal() << 1, 1, 0, 0, 0;
  res = lemma47_check(s5, 0.25);
  CHECK(res.lhs == doctest::Approx(res.rhs));
}

TEST_CASE("determinant inequality check validates its input") {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(4, 4);
  s.diagonal() << 1, 1, 0, 0;
  CHECK_THROWS_AS(lemma47_check(s, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(lemma47_check(s, 1.5), std::invalid_argument);  // above 1/lambda_max

  Eigen::MatrixXd bad_trace = Eigen::MatrixXd::Zero(4, 4);
  bad_trace.diagonal() << 1, 1, 1, 0;
  CHECK_THROWS_AS(lemma47_check(bad_trace, 0.5), std::invalid_argument);

  Eigen::MatrixXd unpaired = Eigen::MatrixXd::Zero(4, 4);
  unpaired.diagonal() << 1.5, 0.5, 0, 0;
  CHECK_THROWS_AS(lemma47_check(unpaired, 0.5), std::invalid_argument);

  Eigen::MatrixXd negative = Eigen::MatrixXd::Zero(4, 4);
  negative.diagonal() << 1.5, 1.5, -0.5, -0.5;
  CHECK_THROWS_AS(lemma47_check(negative, 0.5), std::invalid_argument);
}

TEST_CASE("wedge point validation") {
  const SkewMatrix b = pair_matrix(2, {1.0});
  CHECK_NOTHROW(WedgePoint({2.0, 1.0}, 0.5, b));
  CHECK_THROWS_AS(WedgePoint({2.0, 1.0}, 1.0, b), FocalRadiusError);   // |t| = x_r
  CHECK_THROWS_AS(WedgePoint({2.0, 1.0}, -1.2, b), FocalRadiusError);  // |t| > x_r
  CHECK_THROWS_AS(WedgePoint({1.0, 2.0}, 0.1, b), std::invalid_argument);  // ascending
  CHECK_THROWS_AS(WedgePoint({2.0, 2.0}, 0.1, b), std::invalid_argument);  // tie
  CHECK_THROWS_AS(WedgePoint({2.0, 1.0}, 0.1, 2.0 * b), std::invalid_argument);  // non-unit
  const WedgePoint w({2.0, 1.0}, 0.5, b);
  CHECK(w.n() == 6);
  CHECK(w.r() == 2);
  const SkewMatrix amb = w.ambient();
  CHECK(amb(0, 1) == doctest::Approx(2.0));
  CHECK(amb(2, 3) == doctest::Approx(1.0));
  CHECK(amb(4, 5) == doctest::Approx(0.5));
}

TEST_CASE("wedge determinant for a single-pair block") {
  const SkewMatrix b = pair_matrix(2, {1.0});
  for (double t : {0.0, 0.3, 0.7}) {
    const WedgePoint w({2.0, 1.0}, t, b);
    const double want = std::pow(1.0 - t * t / 4.0, 2) * std::pow(1.0 - t * t, 2);
    CHECK(wedge_determinant(w) == doctest::Approx(want));
  }
}

TEST_CASE("wedge weight equals its lower bound in the hypersurface regime") {
  const SkewMatrix b = pair_matrix(2, {1.0});
  const WedgePoint w({3.0, 1.0}, 0.4, b);
  const WedgeWeight ww = weight_primary_wedge(w, 6, 2);
  CHECK(ww.exact == doctest::Approx(ww.lower_bound).epsilon(1e-13));
  const double want = std::pow(9.0 - 1.0, 2) * std::pow(9.0 - 0.16, 2) *
                      std::pow(1.0 - 0.16, 2);
  CHECK(ww.lower_bound == doctest::Approx(want));
}

TEST_CASE("wedge weight dominates its lower bound off the hypersurface regime") {
  Rng rng(77);
  const SkewMatrix b = sample_unit_normal_block(rng, 4, 2);
  const WedgePoint w({2.0, 1.0}, 0.6, b);
  const WedgeWeight ww = weight_primary_wedge(w, 8, 2);
  CHECK(ww.exact >= ww.lower_bound);
  const WedgePoint w0({2.0, 1.0}, 0.0, b);
  const WedgeWeight ww0 = weight_primary_wedge(w0, 8, 2);
  CHECK(ww0.exact == doctest::Approx(ww0.lower_bound).epsilon(1e-12));
}

TEST_CASE("isotropy action on the tangent basis is orientation preserving") {
  const std::vector<double> x = {2.0, 1.0};
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2, 2);
  CHECK(orientability_action(x, {0.3, -1.1}, {1, 1}, s) == doctest::Approx(1.0));
  CHECK(orientability_action(x, {2.0, 0.0}, {-1, -1}, s) == doctest::Approx(1.0));
  s << 0.6, -0.8, 0.8, 0.6;  // rotation
  CHECK(orientability_action(x, {0.0, 0.5}, {1, 1}, s) == doctest::Approx(1.0));
  s << 0.6, 0.8, 0.8, -0.6;  // reflection, det -1
  CHECK(orientability_action(x, {0.1, 0.2}, {-1, 1}, s) == doctest::Approx(1.0));
}

TEST_CASE("isotropy action rejects elements outside the identity component rule") {
  const std::vector<double> x = {2.0, 1.0};
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(orientability_action(x, {0.0, 0.0}, {-1, 1}, s), std::invalid_argument);
  Eigen::MatrixXd notorth(2, 2);
  notorth << 1, 1, 0, 1;
  CHECK_THROWS_AS(orientability_action(x, {0.0, 0.0}, {1, 1}, notorth),
                  std::invalid_argument);
}
