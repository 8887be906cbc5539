#include "pfv/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace pfv {

std::vector<double> sample_descending(Rng& rng, int r, double min_gap, double base) {
  if (r < 0) throw std::invalid_argument("sample_descending: negative count");
  std::vector<double> x(r);
  double v = base + 0.7 * rng.uniform();
  for (int i = r - 1; i >= 0; --i) {
    x[i] = v;
    v += min_gap + 0.8 * rng.uniform();
  }
  return x;
}

SkewMatrix sample_unit_normal_block(Rng& rng, int m, int rank_pairs) {
  if (m < 2) throw std::invalid_argument("sample_unit_normal_block: need dimension >= 2");
  if (rank_pairs < 0) {
    SkewMatrix b = random_skew(m, rng.next_u64());
    const double nb = b.norm();
    if (nb == 0.0) return sample_unit_normal_block(rng, m, rank_pairs);
    return (1.0 / nb) * b;
  }
  if (rank_pairs == 0 || 2 * rank_pairs > m)
    throw std::invalid_argument("sample_unit_normal_block: bad pair count");
  std::vector<double> y(rank_pairs);
  double s2 = 0.0;
  for (double& v : y) {
    v = 0.3 + rng.uniform();
    s2 += v * v;
  }
  for (double& v : y) v /= std::sqrt(s2);
  std::sort(y.begin(), y.end(), std::greater<double>());
  const Eigen::MatrixXd q = random_special_orthogonal(m, rng.next_u64());
  return pair_matrix(m, y).conjugated(q);
}

SkewMatrix sample_member(Rng& rng, int n, int k) {
  if (2 * k > n) throw std::invalid_argument("sample_member: rank exceeds dimension");
  const Eigen::MatrixXd q = random_special_orthogonal(n, rng.next_u64());
  Rng xs(rng.next_u64());
  return pair_matrix(n, sample_descending(xs, k)).conjugated(q);
}

}  // namespace pfv
