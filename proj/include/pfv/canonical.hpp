#pragma once

#include "pfv/skew.hpp"

#include <vector>

namespace pfv {

/// Canonical rotation form m = q * M(pairs) * q^T with q orthogonal and
/// pairs x_1 >= ... >= x_k > 0 (M(x) = sum x_i X_{2i,2i+1}).
///
/// q has det +1 whenever that is compatible with positive pairs: always
/// when a kernel column exists (one kernel column is flipped if needed).
/// A full-rank even-dimensional matrix with negative Pfaffian admits no
/// rotation frame with positive pairs at all; in that single corner q is
/// returned with det -1 so that the reconstruction stays exact.
struct CanonicalForm {
  int n = 0;
  Eigen::MatrixXd q;
  std::vector<double> pairs;
  int rank = 0;  // 2 * (number of pairs above tol * pairs[0])

  int pair_count() const { return static_cast<int>(pairs.size()); }
  SkewMatrix reconstruct() const;
};

/// Decomposes via the Hermitian eigenproblem of i*m: each eigenvector for
/// eigenvalue x > 0 yields an orthonormal 2-plane on which m acts as the
/// x-rotation block, which also handles colliding pairs cleanly.
/// `tol` is the relative rank threshold: a pair counts toward `rank`
/// iff x_i > tol * x_1. Requires tol in (0, 1).
CanonicalForm canonical_decompose(const SkewMatrix& m, double tol = 1e-9);

/// Skew-adapted SVD m = u * diag(sigma) * v^T with u = v * P, where P is
/// block-diagonal with 2x2 rotation blocks [[0,1],[-1,0]] on the pair
/// planes and identity on the kernel; sigma is nonascending with values
/// in repeated pairs (x_1, x_1, ..., x_k, x_k, 0, ...).
struct SkewSVD {
  Eigen::MatrixXd u;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd v;
};

SkewSVD skew_svd(const SkewMatrix& m);

}  // namespace pfv
