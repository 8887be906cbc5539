#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace pfv {

/// Real n x n skew-symmetric matrix under the half-trace metric
/// |M|^2 = (1/2) tr(M M^T), so each basis element X_ij has unit norm.
class SkewMatrix {
 public:
  SkewMatrix() = default;

  /// Validates approximate skew-symmetry, then stores the exact skew part
  /// (zero diagonal, entries(j, i) == -entries(i, j) to the last bit).
  explicit SkewMatrix(const Eigen::MatrixXd& m);

  static SkewMatrix zero(int n);

  /// (m - m^T) / 2 with no symmetry complaint; used to clean up products
  /// that are skew in exact arithmetic.
  static SkewMatrix skew_part(const Eigen::MatrixXd& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  /// Sets entry (i, j) = v and (j, i) = -v; i == j is rejected.
  void set(int i, int j, double v);

  double squared_norm() const;
  double norm() const;

  /// q * M * q^T for orthogonal q, cleaned to exact skew symmetry.
  SkewMatrix conjugated(const Eigen::MatrixXd& q) const;

  /// Principal submatrix picked by strictly increasing 0-based indices.
  SkewMatrix principal_submatrix(const std::vector<int>& indices) const;

  /// Row-major strictly-upper entries: (0,1), (0,2), ..., (n-2,n-1).
  std::vector<double> upper_entries() const;
  static SkewMatrix from_upper(int n, const std::vector<double>& upper);

  SkewMatrix& operator+=(const SkewMatrix& o);
  SkewMatrix& operator-=(const SkewMatrix& o);
  SkewMatrix& operator*=(double s);

 private:
  Eigen::MatrixXd m_ = Eigen::MatrixXd::Zero(0, 0);
};

SkewMatrix operator+(SkewMatrix a, const SkewMatrix& b);
SkewMatrix operator-(SkewMatrix a, const SkewMatrix& b);
SkewMatrix operator*(double s, SkewMatrix a);

/// <A, B> = (1/2) tr(A B^T) = sum_{i<j} A_ij B_ij.
double inner(const SkewMatrix& a, const SkewMatrix& b);

/// Basis matrix X_ij (0-based, i < j): +1 at (i, j), -1 at (j, i).
SkewMatrix basis_matrix(int n, int i, int j);

/// M(x) = sum_i x[i] * X_{2i, 2i+1}; requires 2 * x.size() <= n.
SkewMatrix pair_matrix(int n, const std::vector<double>& x);

/// Deterministic RNG: mt19937_64 driven, with an explicit Box-Muller
/// normal sampler so streams do not depend on libstdc++ internals.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }
  /// Uniform double in (0, 1).
  double uniform();
  /// Uniform double in (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double gauss();
  /// Uniform integer in [0, m).
  int index(int m);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Derives an independent stream seed from (seed, stream) via splitmix64,
/// so trials can be evaluated in any order.
uint64_t derive_seed(uint64_t seed, uint64_t stream);

/// Haar-distributed rotation: Gaussian matrix, QR, R-sign fix, then a last
/// column flip if needed to land in SO(n).
Eigen::MatrixXd random_special_orthogonal(int n, uint64_t seed);

/// Strictly-upper entries i.i.d. N(0, scale^2).
SkewMatrix random_skew(int n, uint64_t seed, double scale = 1.0);

}  // namespace pfv
