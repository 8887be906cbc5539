#pragma once

#include "pfv/cone_geometry.hpp"
#include "pfv/skew.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pfv {

/// Chart data for a primary slicing set: an ambient point decomposed as
/// q * blockdiag(M(x), N) * q^T with q in SO(n), x strictly descending
/// positive, and the residual block N satisfying |N| < x_r.
struct SliceChart {
  Eigen::MatrixXd q;
  std::vector<double> x;
  SkewMatrix normal;

  int n() const { return static_cast<int>(q.rows()); }
  int r() const { return static_cast<int>(x.size()); }
  /// Reassembled ambient matrix q * blockdiag(M(x), N) * q^T.
  SkewMatrix ambient() const;
};

/// Decomposes an ambient skew matrix into a slice chart with r pairs.
/// Returns a chart iff the top r canonical values are separated by gaps
/// larger than tol, exceed tol themselves, and the residual has norm
/// below x_r - tol; returns nullopt otherwise (the failure set has
/// measure zero plus the wedge boundaries).
std::optional<SliceChart> slice_decompose(const SkewMatrix& m, int r, double tol = 1e-9);

/// True iff the two charts parametrize the same slicing set, i.e. the
/// frame change q2^T q1 preserves the block wedge: for `samples` random
/// wedge elements H, conjugation keeps the leading block equal to M(x)
/// and the off-diagonal blocks zero. Equivalent to q2^T q1 lying in the
/// isotropy group SO(2)^r x SO(n-2r).
bool same_slicing_set(const SliceChart& a, const SliceChart& b, int samples = 32,
                      std::uint64_t seed = 0);

/// Label of a secondary level set: the vector c with c_i = sqrt(x_i^2 - t^2),
/// constant along each hyperbolic level. The scalar level values are
/// h_i = c_i^2 / 2.
struct SecondaryLevel {
  std::vector<double> c;

  int r() const { return static_cast<int>(c.size()); }
  double level(int i) const { return 0.5 * c[i] * c[i]; }
};

/// Level through the wedge point (x, t): c_i = sqrt(x_i^2 - t^2).
/// Requires |t| < x_r.
SecondaryLevel secondary_level(const std::vector<double>& x, double t);

/// The unique point of the level c at normal offset t with unit block b:
/// x_i = sqrt(c_i^2 + t^2). The wedge condition |t| < x_r holds
/// automatically; throws DegenerateLevelError when c_r <= 0.
WedgePoint secondary_point(const SecondaryLevel& level, double t, const SkewMatrix& b);

/// Secondary slicing weight w2 = 1 / (prod x_i * sqrt(1 + t^2 sum 1/x_i^2)).
/// Requires x positive and |t| < min(x).
double weight_secondary(const std::vector<double>& x, double t);

/// Both sides of the composite lower-bound inequality
///   prod (c_i^2 + t^2)^(2n-4r-4)
///     >= prod (c_i^2)^(2n-4r-5) * { sum_j t^2 prod_{k != j} (c_k^2 + t^2)
///                                   + prod_j (c_j^2 + t^2) },
/// evaluated in the log domain. ok means lhs >= rhs * (1 - 1e-10). The
/// inequality holds for all inputs exactly when n - 2r >= 3.
struct CompositeInequality {
  double lhs = 0.0;
  double rhs = 0.0;
  double log_lhs = 0.0;
  double log_rhs = 0.0;
  bool ok = false;
};

CompositeInequality composite_inequality(int n, int r, const std::vector<double>& c, double t);

/// Grid minimization of the exact composite weight w1 * w2 along the
/// secondary level c with unit block b. regime_supported is true when
/// n - 2r >= 3, the regime in which the minimum sits at t = 0; for
/// n - 2r = 2 the result is still computed so the failure of the bound
/// can be exhibited.
struct CompositeMinResult {
  double argmin_t = 0.0;
  double min_value = 0.0;
  double value_at_0 = 0.0;
  bool regime_supported = false;
};

CompositeMinResult composite_min_check(int n, int r, const std::vector<double>& c,
                                       const SkewMatrix& b, const std::vector<double>& t_grid);

/// The exact composite weight w1 * w2 at offset t along the level c with
/// unit block b (the quantity minimized by composite_min_check).
double composite_weight(int n, int r, const std::vector<double>& c, const SkewMatrix& b,
                        double t);

}  // namespace pfv
