#include "pfv/tangent_cone.hpp"

#include "pfv/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pfv {

namespace {

/// Largest singular value of a general square matrix.
double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

/// Upper-left invertible block of the base point in its canonical frame.
Eigen::MatrixXd leading_block(const TangentQuery& q) {
  const int two_k = 2 * q.k;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(two_k, two_k);
  for (int i = 0; i < q.k; ++i) {
    m(2 * i, 2 * i + 1) = q.base_form.pairs[i];
    m(2 * i + 1, 2 * i) = -q.base_form.pairs[i];
  }
  return m;
}

}  // namespace

TangentQuery make_tangent_query(const SkewMatrix& base, const SkewMatrix& direction, int r,
                                double tol) {
  const int n = base.dim();
  if (direction.dim() != n)
    throw std::invalid_argument("make_tangent_query: base and direction sizes differ");
  if (r < 0 || 2 * r > n - 2)
    throw std::invalid_argument("make_tangent_query: need 0 <= r <= floor(n/2) - 1");

  TangentQuery q;
  q.base = base;
  q.direction = direction;
  q.r = r;
  q.base_form = canonical_decompose(base, tol);
  q.k = q.base_form.rank / 2;
  if (q.k > r)
    throw std::invalid_argument("make_tangent_query: base point lies outside the variety");

  const int two_k = 2 * q.k;
  const Eigen::MatrixXd v = q.base_form.q.transpose() * direction.mat() * q.base_form.q;
  q.a = v.block(0, 0, two_k, two_k);
  q.b = v.block(0, two_k, two_k, n - two_k);
  q.d = SkewMatrix::skew_part(v.block(two_k, two_k, n - two_k, n - two_k));
  return q;
}

bool tangent_membership(const TangentQuery& q, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tangent_membership: bad tolerance");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(q.d.mat());
  const double threshold = tol * q.direction.norm();
  int rank_d = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > threshold) ++rank_d;
  return rank_d <= 2 * (q.r - q.k);
}

TangentFactorization factorize_tangent_cone(int n, int r, int k) {
  if (k < 0 || k > r) throw std::invalid_argument("factorize_tangent_cone: need 0 <= k <= r");
  TangentFactorization out{VarietySpec(n - 2 * k, r - k),
                           static_cast<long>(k) * (2L * n - 2L * k - 1L)};
  return out;
}

SkewMatrix approach_curve(const TangentQuery& q, double t) {
  const int n = q.n();
  const int two_k = 2 * q.k;
  Eigen::MatrixXd xt = Eigen::MatrixXd::Zero(n, n);
  if (q.k == 0) {
    xt = t * q.d.mat();
  } else {
    const Eigen::MatrixXd p = leading_block(q) + t * q.a;
    // Singularity must be judged against the scale of the inputs: a block
    // whose entries all cancel to roundoff would still pass a pivot test
    // that is relative to its own largest pivot.
    const double scale = std::max(q.base_form.pairs[0],
                                  std::abs(t) * q.a.cwiseAbs().maxCoeff());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(p, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smallest = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(scale > 0.0) || smallest <= 1e-12 * scale)
      throw StepTooLargeError("approach_curve: leading block M + tA is singular");
    xt.topLeftCorner(two_k, two_k) = p;
    xt.topRightCorner(two_k, n - two_k) = t * q.b;
    xt.bottomLeftCorner(n - two_k, two_k) = -t * q.b.transpose();
    xt.bottomRightCorner(n - two_k, n - two_k) =
        t * q.d.mat() - t * t * q.b.transpose() * svd.solve(q.b);
  }
  return SkewMatrix(SkewMatrix::skew_part(xt)).conjugated(q.base_form.q);
}

SkewMatrix eliminated_form(const TangentQuery& q, double t) {
  const int n = q.n();
  const int two_k = 2 * q.k;
  Eigen::MatrixXd nt = Eigen::MatrixXd::Zero(n, n);
  if (q.k > 0) {
    nt.topLeftCorner(two_k, two_k) = leading_block(q) + t * q.a;
  }
  nt.bottomRightCorner(n - two_k, n - two_k) = t * q.d.mat();
  return SkewMatrix(SkewMatrix::skew_part(nt));
}

double tangent_distance_bound(const TangentQuery& q, double t) {
  const CanonicalForm d_form = canonical_decompose(q.d);
  double tail = 0.0;
  for (size_t i = static_cast<size_t>(q.r - q.k); i < d_form.pairs.size(); ++i)
    tail += d_form.pairs[i] * d_form.pairs[i];
  return std::abs(t) * std::sqrt(tail);
}

double weyl_threshold(const TangentQuery& q) {
  if (q.k == 0) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd m = leading_block(q);
  const double sigma_a = spectral_norm(q.a * m.transpose() + m * q.a.transpose());
  const double sigma_b = spectral_norm(q.a * q.a.transpose());
  const CanonicalForm d_form = canonical_decompose(q.d);
  const double lambda1 = d_form.pairs.empty() ? 0.0 : d_form.pairs[0];
  const double xk = q.base_form.pairs[q.k - 1];
  const double quad = sigma_b + lambda1 * lambda1;
  if (quad <= 0.0) {
    if (sigma_a <= 0.0) return std::numeric_limits<double>::infinity();
    return xk * xk / sigma_a;
  }
  // Positive root of quad t^2 + sigma_a t - x_k^2 = 0.
  return (-sigma_a + std::sqrt(sigma_a * sigma_a + 4.0 * quad * xk * xk)) / (2.0 * quad);
}

bool weyl_bounds_check(const TangentQuery& q, double t) {
  if (q.k == 0) return true;
  const Eigen::MatrixXd m = leading_block(q);
  const Eigen::MatrixXd shifted = m + t * q.a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shifted * shifted.transpose());
  const Eigen::VectorXd mu = es.eigenvalues();  // ascending
  const double sigma =
      spectral_norm(q.a * m.transpose() + m * q.a.transpose() + t * q.a * q.a.transpose());
  for (int i = 0; i < q.k; ++i) {
    const double center = q.base_form.pairs[i] * q.base_form.pairs[i];
    const double slack = std::abs(t) * sigma + 1e-12 * std::max(1.0, center);
    // mu sorted ascending; pair i (descending order) sits at the top.
    const double hi = mu(2 * q.k - 1 - 2 * i);
    const double lo = mu(2 * q.k - 2 - 2 * i);
    if (hi > center + slack || lo < center - slack) return false;
  }
  return true;
}

SlopeFit order_fit(const TangentQuery& q, const std::vector<double>& t_grid) {
  const bool member = tangent_membership(q);
  const VarietySpec spec(q.n(), q.r);
  std::vector<double> xs;
  std::vector<double> ys;
  for (double t : t_grid) {
    if (!(t > 0.0)) continue;
    double value = 0.0;
    if (member) {
      SkewMatrix xt = q.base;
      try {
        xt = approach_curve(q, t);
      } catch (const StepTooLargeError&) {
        continue;
      }
      value = (xt - (q.base + t * q.direction)).norm();
    } else {
      value = distance(spec, q.base + t * q.direction);
    }
    // Matrix assembly and conjugation leave absolute noise of order
    // 1e-14 * scale in the curves; points in that zone would flatten the
    // fitted order, so they are excluded rather than fitted.
    const double floor = 1e-11 * std::max(1.0, q.base.norm() + q.direction.norm());
    if (value <= floor) continue;
    xs.push_back(std::log(t));
    ys.push_back(std::log(value));
  }
  const int npts = static_cast<int>(xs.size());
  if (npts < 3) throw DegenerateFitError("order_fit: fewer than 3 usable grid points");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < npts; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = npts * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) throw DegenerateFitError("order_fit: degenerate abscissa grid");

  SlopeFit fit;
  fit.slope = (npts * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / npts;
  fit.points = npts;
  return fit;
}

bool nearly_regular_flag(const SkewMatrix& m, const VarietySpec& spec, double tol) {
  if (m.dim() != spec.n) throw std::invalid_argument("nearly_regular_flag: dimension mismatch");
  if (!contains_rank(spec, m, tol))
    throw std::invalid_argument("nearly_regular_flag: point lies outside the variety");
  return stratum(m, tol) == 2 * spec.r - 2;
}

}  // namespace pfv
