#include "pfv/variety.hpp"

#include "pfv/pfaffian.hpp"

#include <cmath>
#include <stdexcept>

namespace pfv {

VarietySpec::VarietySpec(int n_, int r_) : n(n_), r(r_) {
  if (n < 2 || r < 0 || 2 * r > n - 2)
    throw std::invalid_argument("VarietySpec: need 0 <= r <= floor(n/2) - 1");
}

bool contains_rank(const VarietySpec& spec, const SkewMatrix& m, double tol) {
  if (m.dim() != spec.n) throw std::invalid_argument("contains_rank: dimension mismatch");
  return canonical_decompose(m, tol).rank <= 2 * spec.r;
}

bool contains_pfaffian(const VarietySpec& spec, const SkewMatrix& m, double tol) {
  if (m.dim() != spec.n) throw std::invalid_argument("contains_pfaffian: dimension mismatch");
  if (!(tol > 0.0 && tol < 1.0))
    throw std::invalid_argument("contains_pfaffian: tol must lie in (0, 1)");
  const int n = spec.n;
  const int order = 2 * spec.r + 2;
  // Each 2r+2 principal Pfaffian is homogeneous of degree r+1; normalize the
  // vanishing threshold by the per-pair scale |m| / sqrt(r+1).
  const double unit = m.norm() / std::sqrt(static_cast<double>(spec.r + 1));
  const double threshold = tol * std::pow(unit, spec.r + 1);

  std::vector<int> idx(order);
  for (int i = 0; i < order; ++i) idx[i] = i;
  while (true) {
    if (std::abs(principal_pfaffian(m, idx)) > threshold) return false;
    // next combination in lexicographic order
    int i = order - 1;
    while (i >= 0 && idx[i] == n - order + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < order; ++j) idx[j] = idx[j - 1] + 1;
  }
  return true;
}

Projection project(const VarietySpec& spec, const SkewMatrix& m, double tol) {
  if (m.dim() != spec.n) throw std::invalid_argument("project: dimension mismatch");
  const CanonicalForm form = canonical_decompose(m, tol);
  const int keep = std::min<int>(spec.r, form.pair_count());
  std::vector<double> x(form.pairs.begin(), form.pairs.begin() + keep);
  Projection out{pair_matrix(spec.n, x).conjugated(form.q), true};
  if (form.pair_count() > spec.r && spec.r >= 1) {
    const double gap = form.pairs[spec.r - 1] - form.pairs[spec.r];
    if (gap <= tol * form.pairs.front()) out.unique = false;
  }
  return out;
}

double distance(const VarietySpec& spec, const SkewMatrix& m) {
  if (m.dim() != spec.n) throw std::invalid_argument("distance: dimension mismatch");
  const CanonicalForm form = canonical_decompose(m);
  double s2 = 0.0;
  for (int i = spec.r; i < form.pair_count(); ++i) s2 += form.pairs[i] * form.pairs[i];
  return std::sqrt(s2);
}

int stratum(const SkewMatrix& m, double tol) { return canonical_decompose(m, tol).rank; }

}  // namespace pfv
