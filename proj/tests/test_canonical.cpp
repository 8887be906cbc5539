#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfv/canonical.hpp"
#include "pfv/pfaffian.hpp"
#include "pfv/sampling.hpp"

#include <cmath>

using namespace pfv;

namespace {

void check_frame(const CanonicalForm& cf, const SkewMatrix& m) {
  const int n = m.dim();
  CHECK((cf.q * cf.q.transpose() - Eigen::MatrixXd::Identity(n, n)).norm() ==
        doctest::Approx(0.0).epsilon(1e-11));
  CHECK((cf.reconstruct() - m).norm() ==
        doctest::Approx(0.0).epsilon(1e-10 * std::max(1.0, m.norm())));
  for (size_t i = 0; i + 1 < cf.pairs.size(); ++i) CHECK(cf.pairs[i] >= cf.pairs[i + 1]);
  for (double v : cf.pairs) CHECK(v > 0.0);
}

}  // namespace

TEST_CASE("zero matrix decomposes trivially") {
  const CanonicalForm cf = canonical_decompose(SkewMatrix::zero(5));
  CHECK(cf.pairs.empty());
  CHECK(cf.rank == 0);
  CHECK(cf.q.determinant() == doctest::Approx(1.0));
}

TEST_CASE("pair matrix decomposes to its own values") {
  const SkewMatrix m = pair_matrix(6, {3.0, 1.0});
  const CanonicalForm cf = canonical_decompose(m);
  REQUIRE(cf.pairs.size() == 2);
  CHECK(cf.pairs[0] == doctest::Approx(3.0));
  CHECK(cf.pairs[1] == doctest::Approx(1.0));
  CHECK(cf.rank == 4);
  check_frame(cf, m);
}

TEST_CASE("random members round trip across ranks and scales") {
  for (int n : {3, 4, 6, 9}) {
    for (int k = 0; 2 * k <= n; ++k) {
      Rng rng(1000 * n + k);
      const SkewMatrix m = std::exp(rng.uniform(-3.0, 3.0)) * sample_member(rng, n, k);
      const CanonicalForm cf = canonical_decompose(m);
      CHECK(static_cast<int>(cf.pairs.size()) == k);
      CHECK(cf.rank == 2 * k);
      check_frame(cf, m);
    }
  }
}

TEST_CASE("repeated pair values are handled") {
  const SkewMatrix m = pair_matrix(7, {2.0, 2.0, 2.0});
  const CanonicalForm cf = canonical_decompose(m);
  REQUIRE(cf.pairs.size() == 3);
  for (double v : cf.pairs) CHECK(v == doctest::Approx(2.0));
  check_frame(cf, m);
}

TEST_CASE("frame determinant is positive whenever a kernel exists") {
  for (int n : {5, 6, 8}) {
    Rng rng(n);
    const SkewMatrix m = sample_member(rng, n, 1);  // rank 2 < n, kernel nonempty
    const CanonicalForm cf = canonical_decompose(m);
    CHECK(cf.q.determinant() == doctest::Approx(1.0));
    check_frame(cf, m);
  }
}

TEST_CASE("full rank with negative pfaffian forces determinant minus one") {
  // Swapping two axes of a positive-pfaffian matrix flips the sign.
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(4, 4);
  p.row(2).swap(p.row(3));
  const SkewMatrix m = pair_matrix(4, {2.0, 1.0}).conjugated(p);
  CHECK(pfaffian_fast(m) < 0.0);
  const CanonicalForm cf = canonical_decompose(m);
  CHECK(cf.q.determinant() == doctest::Approx(-1.0));
  check_frame(cf, m);

  const SkewMatrix plus = pair_matrix(4, {2.0, 1.0});
  CHECK(pfaffian_fast(plus) > 0.0);
  CHECK(canonical_decompose(plus).q.determinant() == doctest::Approx(1.0));
}

TEST_CASE("rank tolerance counts pairs relative to the top pair") {
  SkewMatrix m = pair_matrix(6, {1.0, 1e-12, 1e-13});
  const CanonicalForm cf = canonical_decompose(m, 1e-9);
  CHECK(cf.rank == 2);  // pairs below tol * x_1 are excluded from the rank
  CHECK(cf.pairs.front() == doctest::Approx(1.0));
  // the raw pair list still reconstructs the matrix, tiny pairs included
  CHECK((cf.reconstruct() - m).norm() == doctest::Approx(0.0).epsilon(1e-10));
  // a looser tolerance lowers the rank further, a tighter one raises it
  CHECK(canonical_decompose(m, 1e-1).rank == 2);
  CHECK(canonical_decompose(m, 1e-14).rank >= 4);
}

TEST_CASE("skew svd reconstructs with doubled singular values") {
  const SkewMatrix m = random_skew(6, 55);
  const SkewSVD svd = skew_svd(m);
  CHECK((svd.u * svd.sigma.asDiagonal() * svd.v.transpose() - m.mat()).norm() ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK((svd.u * svd.u.transpose() - Eigen::MatrixXd::Identity(6, 6)).norm() ==
        doctest::Approx(0.0).epsilon(1e-11));
  CHECK((svd.v * svd.v.transpose() - Eigen::MatrixXd::Identity(6, 6)).norm() ==
        doctest::Approx(0.0).epsilon(1e-11));

  Eigen::JacobiSVD<Eigen::MatrixXd> ref(m.mat());
  for (int i = 0; i < 6; ++i)
    CHECK(svd.sigma(i) == doctest::Approx(ref.singularValues()(i)).epsilon(1e-10));
  const CanonicalForm cf = canonical_decompose(m);
  REQUIRE(svd.sigma.size() == 6);
  for (size_t i = 0; i < cf.pairs.size(); ++i) {
    CHECK(svd.sigma(2 * i) == doctest::Approx(cf.pairs[i]));
    CHECK(svd.sigma(2 * i + 1) == doctest::Approx(cf.pairs[i]));
  }
}
