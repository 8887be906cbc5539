#include "pfv/pfaffian.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace pfv {

namespace {

double pf_recurse(const Eigen::MatrixXd& m, uint32_t mask, std::vector<double>& memo,
                  std::vector<char>& seen) {
  if (mask == 0) return 1.0;
  if (seen[mask]) return memo[mask];
  const int i = std::countr_zero(mask);
  const uint32_t rest = mask & (mask - 1);  // drop lowest bit
  double acc = 0.0;
  double sign = 1.0;
  for (uint32_t bits = rest; bits != 0; bits &= bits - 1) {
    const int j = std::countr_zero(bits);
    const double mij = m(i, j);
    if (mij != 0.0) acc += sign * mij * pf_recurse(m, rest & ~(1u << j), memo, seen);
    sign = -sign;
  }
  seen[mask] = 1;
  memo[mask] = acc;
  return acc;
}

}  // namespace

double pfaffian_expand(const SkewMatrix& m) {
  const int n = m.dim();
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  if (n > 20) throw std::invalid_argument("pfaffian_expand: dimension too large for subset memo");
  std::vector<double> memo(size_t{1} << n, 0.0);
  std::vector<char> seen(size_t{1} << n, 0);
  const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  return pf_recurse(m.mat(), full, memo, seen);
}

double pfaffian_fast(const SkewMatrix& m) {
  const int n = m.dim();
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  Eigen::MatrixXd a = m.mat();
  double result = 1.0;
  for (int k = 0; k + 1 < n; k += 2) {
    // Pivot: bring the largest |a(i, k)|, i > k, into row k+1.
    int kp = k + 1;
    for (int i = k + 2; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(kp, k))) kp = i;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      result = -result;
    }
    const double pivot = a(k, k + 1);
    if (pivot == 0.0) return 0.0;
    result *= pivot;
    const int rest = n - (k + 2);
    if (rest > 0) {
      const Eigen::VectorXd tau = a.row(k).segment(k + 2, rest).transpose() / pivot;
      const Eigen::VectorXd col = a.col(k + 1).segment(k + 2, rest);
      a.block(k + 2, k + 2, rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return result;
}

double principal_pfaffian(const SkewMatrix& m, const std::vector<int>& indices) {
  if (indices.size() % 2 != 0)
    throw std::invalid_argument("principal_pfaffian: index count must be even");
  return pfaffian_expand(m.principal_submatrix(indices));
}

}  // namespace pfv
