#pragma once

#include "pfv/canonical.hpp"
#include "pfv/skew.hpp"
#include "pfv/variety.hpp"

#include <vector>

namespace pfv {

/// A tangent-cone membership query at a base point of rank 2k on the
/// rank <= 2r cone. The direction is partitioned in the base point's
/// canonical frame as [[A, B], [-B^T, D]] with A of size 2k.
struct TangentQuery {
  SkewMatrix base;
  SkewMatrix direction;
  int r = 0;
  int k = 0;
  CanonicalForm base_form;
  Eigen::MatrixXd a;  // 2k x 2k
  Eigen::MatrixXd b;  // 2k x (n - 2k)
  SkewMatrix d;       // (n - 2k) x (n - 2k)

  int n() const { return base.dim(); }
};

/// Builds the query: canonically decomposes the base point, derives
/// k = rank/2, and conjugates the direction into that frame. Throws if
/// the base point's rank exceeds 2r (the point is off the variety).
TangentQuery make_tangent_query(const SkewMatrix& base, const SkewMatrix& direction, int r,
                                double tol = 1e-9);

/// Membership of the direction in the tangent cone: true iff the
/// numerical rank of the D block (singular values above tol * |V|) is
/// at most 2r - 2k.
bool tangent_membership(const TangentQuery& q, double tol = 1e-9);

/// The tangent cone splits as a smaller cone times a Euclidean factor.
struct TangentFactorization {
  VarietySpec cross_section;  // rank <= 2(r-k) cone in dimension n - 2k
  long euclidean_dim = 0;     // k (2n - 2k - 1)
};

TangentFactorization factorize_tangent_cone(int n, int r, int k);

/// The in-variety curve X_t = [[M+tA, tB], [-tB^T, tD - t^2 B^T (M+tA)^{-1} B]]
/// mapped back to the original frame; X_0 = base, and for member
/// directions |X_t - (base + t direction)| = O(t^2). Throws
/// StepTooLargeError when M + tA is singular.
SkewMatrix approach_curve(const TangentQuery& q, double t);

/// The block-eliminated companion N_t = blockdiag(M + tA, tD), expressed
/// in the base point's canonical frame (rank and distances to the cone
/// are frame-invariant).
SkewMatrix eliminated_form(const TangentQuery& q, double t);

/// Certified lower bound t * sqrt(sum of squared D-pairs beyond r - k)
/// for the distance of N_t to the cone; exact for t below
/// weyl_threshold(q).
double tangent_distance_bound(const TangentQuery& q, double t);

/// Largest t for which the spectral separation sqrt(mu_2k) > t lambda_1
/// is guaranteed: the positive root of x_k^2 - t sigma_a - t^2 (sigma_b
/// + lambda_1^2), with sigma_a = |AM^T + MA^T|_2, sigma_b = |AA^T|_2.
/// Infinity when no crossing can occur (e.g. k = 0).
double weyl_threshold(const TangentQuery& q);

/// Checks the eigenvalue localization of the proof: every eigenvalue
/// pair mu_{2i-1}, mu_{2i} of (M + tA)(M + tA)^T lies in
/// [x_i^2 - t sigma, x_i^2 + t sigma] with sigma the largest singular
/// value of AM^T + MA^T + tAA^T.
bool weyl_bounds_check(const TangentQuery& q, double t);

/// Log-log least-squares fit of the approach order: for member
/// directions the residual |X_t - base - t direction| (slope ~ 2), for
/// non-members the distance of base + t direction to the cone
/// (slope ~ 1). Throws DegenerateFitError with fewer than 3 usable
/// grid points.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;  // log-domain constant
  int points = 0;
};

SlopeFit order_fit(const TangentQuery& q, const std::vector<double>& t_grid);

/// True iff the point sits on the stratum of rank exactly 2r - 2 (one
/// pair short of regular). Throws if the point is off the variety.
bool nearly_regular_flag(const SkewMatrix& m, const VarietySpec& spec, double tol = 1e-9);

}  // namespace pfv
