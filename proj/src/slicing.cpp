#include "pfv/slicing.hpp"

#include "pfv/canonical.hpp"
#include "pfv/errors.hpp"
#include "pfv/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pfv {

namespace {

void check_level_args(const std::vector<double>& x, double t, const char* who) {
  if (x.empty()) throw std::invalid_argument(std::string(who) + ": need at least one pair");
  double xmin = x[0];
  for (double xi : x) {
    if (!(xi > 0.0)) throw std::invalid_argument(std::string(who) + ": values must be positive");
    xmin = std::min(xmin, xi);
  }
  if (!(std::abs(t) < xmin))
    throw FocalRadiusError(std::string(who) + ": |t| must stay below the focal radius");
}

}  // namespace

SkewMatrix SliceChart::ambient() const {
  const int nn = n();
  const int off = 2 * r();
  SkewMatrix h = pair_matrix(nn, x);
  for (int i = 0; i < normal.dim(); ++i)
    for (int j = i + 1; j < normal.dim(); ++j) h.set(off + i, off + j, normal(i, j));
  return h.conjugated(q);
}

std::optional<SliceChart> slice_decompose(const SkewMatrix& m, int r, double tol) {
  const int n = m.dim();
  if (r < 1 || 2 * r > n - 2)
    throw std::invalid_argument("slice_decompose: need 1 <= r <= floor(n/2) - 1");
  if (!(tol > 0.0) || !(tol < 1.0)) throw std::invalid_argument("slice_decompose: bad tolerance");

  const CanonicalForm cf = canonical_decompose(m);
  if (static_cast<int>(cf.pairs.size()) < r) return std::nullopt;
  if (!(cf.pairs[r - 1] > tol)) return std::nullopt;
  for (int i = 1; i < r; ++i)
    if (!(cf.pairs[i - 1] - cf.pairs[i] > tol)) return std::nullopt;

  double tail_sq = 0.0;
  for (size_t i = r; i < cf.pairs.size(); ++i) tail_sq += cf.pairs[i] * cf.pairs[i];
  const double residual_norm = std::sqrt(tail_sq);
  if (!(residual_norm < cf.pairs[r - 1] - tol)) return std::nullopt;

  SliceChart chart;
  chart.q = cf.q;
  chart.x.assign(cf.pairs.begin(), cf.pairs.begin() + r);
  const int mdim = n - 2 * r;
  SkewMatrix normal = SkewMatrix::zero(mdim);
  for (size_t i = r; i < cf.pairs.size(); ++i) {
    const int j = 2 * static_cast<int>(i - r);
    normal.set(j, j + 1, cf.pairs[i]);
  }
  // The chart rotation must be special-orthogonal; fix a reflection by
  // flipping the last frame column, which conjugates the residual block.
  if (chart.q.determinant() < 0.0) {
    chart.q.col(n - 1) *= -1.0;
    Eigen::MatrixXd flipped = normal.mat();
    flipped.row(mdim - 1) *= -1.0;
    flipped.col(mdim - 1) *= -1.0;
    normal = SkewMatrix(flipped);
  }
  chart.normal = normal;
  return chart;
}

bool same_slicing_set(const SliceChart& a, const SliceChart& b, int samples, std::uint64_t seed) {
  if (a.n() != b.n() || a.r() != b.r())
    throw std::invalid_argument("same_slicing_set: charts must share (n, r)");
  if (samples < 1) throw std::invalid_argument("same_slicing_set: need at least one sample");
  const int n = a.n();
  const int r = a.r();
  const int off = 2 * r;
  const Eigen::MatrixXd g = b.q.transpose() * a.q;

  for (int trial = 0; trial < samples; ++trial) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    const std::vector<double> xt = sample_descending(rng, r);
    const SkewMatrix block = sample_unit_normal_block(rng, n - off);
    const double t = rng.uniform(0.0, 0.9 * xt.back());

    SkewMatrix h = pair_matrix(n, xt);
    for (int i = 0; i < n - off; ++i)
      for (int j = i + 1; j < n - off; ++j) h.set(off + i, off + j, t * block(i, j));

    const SkewMatrix image = h.conjugated(g);
    const double scale = std::max(1.0, h.norm());
    const SkewMatrix expected = pair_matrix(n, xt);
    for (int i = 0; i < off; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double want = j < off ? expected(i, j) : 0.0;
        if (std::abs(image(i, j) - want) > 1e-8 * scale) return false;
      }
  }
  return true;
}

SecondaryLevel secondary_level(const std::vector<double>& x, double t) {
  check_level_args(x, t, "secondary_level");
  SecondaryLevel out;
  out.c.reserve(x.size());
  for (double xi : x) out.c.push_back(std::sqrt(xi * xi - t * t));
  return out;
}

WedgePoint secondary_point(const SecondaryLevel& level, double t, const SkewMatrix& b) {
  if (level.c.empty()) throw DegenerateLevelError("secondary_point: empty level");
  for (double ci : level.c)
    if (!(ci > 0.0))
      throw DegenerateLevelError("secondary_point: level touches the cone's singular set");
  std::vector<double> x;
  x.reserve(level.c.size());
  for (double ci : level.c) x.push_back(std::sqrt(ci * ci + t * t));
  return WedgePoint(std::move(x), t, b);
}

double weight_secondary(const std::vector<double>& x, double t) {
  check_level_args(x, t, "weight_secondary");
  double log_prod = 0.0;
  double inv_sq = 0.0;
  for (double xi : x) {
    log_prod += std::log(xi);
    inv_sq += 1.0 / (xi * xi);
  }
  return std::exp(-log_prod) / std::sqrt(1.0 + t * t * inv_sq);
}

CompositeInequality composite_inequality(int n, int r, const std::vector<double>& c, double t) {
  if (r < 1 || static_cast<int>(c.size()) != r)
    throw std::invalid_argument("composite_inequality: c length must equal r >= 1");
  if (n < 2 || 2 * r > n - 2)
    throw std::invalid_argument("composite_inequality: need 0 <= r <= floor(n/2) - 1");
  for (double ci : c)
    if (!(ci > 0.0)) throw std::invalid_argument("composite_inequality: c must be positive");

  const double a = 2.0 * n - 4.0 * r - 4.0;
  const double t2 = t * t;
  double sum_log_shift = 0.0;  // sum log(c_i^2 + t^2)
  double sum_log_c = 0.0;      // sum log(c_i^2)
  for (double ci : c) {
    sum_log_shift += std::log(ci * ci + t2);
    sum_log_c += std::log(ci * ci);
  }
  // Brace term: sum_j t^2 prod_{k != j} (c_k^2 + t^2) + prod_j (c_j^2 + t^2),
  // evaluated as prod(c_k^2 + t^2) * (1 + t^2 sum_j 1/(c_j^2 + t^2)).
  double inv_sum = 0.0;
  for (double ci : c) inv_sum += 1.0 / (ci * ci + t2);
  const double log_brace = sum_log_shift + std::log1p(t2 * inv_sum);

  CompositeInequality out;
  out.log_lhs = a * sum_log_shift;
  out.log_rhs = (a - 1.0) * sum_log_c + log_brace;
  out.lhs = std::exp(out.log_lhs);
  out.rhs = std::exp(out.log_rhs);
  out.ok = out.log_lhs >= out.log_rhs + std::log1p(-1e-10);
  return out;
}

double composite_weight(int n, int r, const std::vector<double>& c, const SkewMatrix& b,
                        double t) {
  SecondaryLevel level;
  level.c = c;
  const WedgePoint w = secondary_point(level, t, b);
  return weight_primary_wedge(w, n, r).exact * weight_secondary(w.x, t);
}

CompositeMinResult composite_min_check(int n, int r, const std::vector<double>& c,
                                       const SkewMatrix& b, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("composite_min_check: empty grid");
  CompositeMinResult out;
  out.regime_supported = (n - 2 * r) >= 3;
  out.value_at_0 = composite_weight(n, r, c, b, 0.0);
  out.argmin_t = t_grid.front();
  out.min_value = composite_weight(n, r, c, b, t_grid.front());
  for (size_t i = 1; i < t_grid.size(); ++i) {
    const double v = composite_weight(n, r, c, b, t_grid[i]);
    if (v < out.min_value) {
      out.min_value = v;
      out.argmin_t = t_grid[i];
    }
  }
  return out;
}

}  // namespace pfv
