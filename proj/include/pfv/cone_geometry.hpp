#pragma once

#include "pfv/skew.hpp"

#include <utility>
#include <vector>

namespace pfv {

/// Ordered tangent basis at a regular point M(x) of the rank <= 2r cone:
/// first the r slice directions X_{2i,2i+1}, then for each pair p < q the
/// quadruple X_{2p,2q}, X_{2p,2q+1}, X_{2p+1,2q}, X_{2p+1,2q+1}, then for
/// each i the raising directions X_{2i,a}, a = 2r..n-1, followed by
/// X_{2i+1,a}. Size is the cone dimension r(2r-1) + 2r(n-2r).
std::vector<std::pair<int, int>> tangent_basis_order(int n, int r);

/// Normal-space basis: X_{ab} with 2r <= a < b < n.
std::vector<std::pair<int, int>> normal_basis_order(int n, int r);

/// Point of the normal wedge over M(x): strictly descending positive x of
/// length r, a unit-norm normal block b of size n - 2r, and |t| < x_r.
struct WedgePoint {
  std::vector<double> x;
  double t = 0.0;
  SkewMatrix b;

  WedgePoint(std::vector<double> x_, double t_, SkewMatrix b_);

  int r() const { return static_cast<int>(x.size()); }
  int n() const { return 2 * r() + b.dim(); }
  /// The ambient matrix M(x) + t * (0 ⊕ b).
  SkewMatrix ambient() const;
};

/// Closed-form slice weight at M(x):
/// prod_{i<j} (x_i^2 - x_j^2)^2 * prod_i x_i^(2(n-2r)).
double weight_primary(const std::vector<double>& x, int n, int r);

/// Finite-difference Jacobian of the rotation-times-slice parametrization
/// F(s, t) = exp(S) M(x + t) exp(S)^T, with one Richardson extrapolation
/// of central differences. Rows are coordinates in the X_ij basis
/// (tangent order first, normal coordinates appended); columns are the r
/// slice parameters followed by the rotation parameters in tangent order.
struct ParametrizationJacobian {
  int n = 0;
  int r = 0;
  Eigen::MatrixXd df;  // n(n-1)/2 rows, dimension columns

  /// Full Jacobian sqrt(det(df^T df)) via singular values.
  double jacobian() const;
  /// Jacobian of the slice restriction F(0, t) alone (identity block, 1).
  double restricted_jacobian() const;
  /// The 4x4 block coupling pair (p, q): rows are the F-coordinates and
  /// columns the rotation parameters of the quadruple, i.e. the transpose
  /// of the matrix G_pq written row-per-parameter.
  Eigen::Matrix4d g_block(int p, int q) const;
  /// The 2(n-2r) square block for pair i against the kernel columns
  /// (transpose of H_i written row-per-parameter).
  Eigen::MatrixXd h_block(int i) const;
};

ParametrizationJacobian parametrization_jacobian(const std::vector<double>& x, int n, int r,
                                                 double step = 1e-4);

/// Independent numeric value of the slice weight: full Jacobian divided by
/// the restricted one.
double weight_primary_numeric(const std::vector<double>& x, int n, int r, double step = 1e-4);

/// Shape operator A_v at M(x) for the unit normal v = 0 ⊕ b, expressed in
/// the ordered tangent basis: zero on the slice and pair-coupling blocks,
/// and [[0, B^T/x_i], [B/x_i, 0]] on each raising block. Entries satisfy
/// (A_v)_{uw} = <II(u, w), v> for the form below.
struct ShapeOperator {
  std::vector<std::pair<int, int>> basis;
  Eigen::MatrixXd matrix;
};

ShapeOperator shape_operator(const std::vector<double>& x, const SkewMatrix& b);

/// Second fundamental form value II(X_first, X_second) measured from the
/// variety itself: mixed central second differences of the projected
/// two-parameter surface, then minus the normal component. Nonzero only
/// for raising pairs X_{2i,h}, X_{2i+1,l} with h, l >= 2r, where it is
/// -(1/x_i) X_{h,l}.
SkewMatrix second_fundamental_numeric(const std::vector<double>& x, int n, int r,
                                      std::pair<int, int> first, std::pair<int, int> second,
                                      double step = 1e-3);

/// det(I - t A_v) in product form: prod_i det(I - (t^2/x_i^2) b b^T).
/// Requires |t| < x_r (focal radius).
double wedge_determinant(const WedgePoint& w);

/// Checks det(I - tau S) >= (1 - tau)^2 for a PSD symmetric S with paired
/// eigenvalues and trace 2, and 0 <= tau <= 1/lambda_max.
struct Lemma47Result {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

Lemma47Result lemma47_check(const Eigen::MatrixXd& s, double tau);

/// Exact wedge weight w1(x) * det(I - t A_v) and its closed lower bound
/// prod_{i<j}(x_i^2-x_j^2)^2 * prod x_i^(2(n-2-2r)) * prod (x_i^2-t^2)^2.
struct WedgeWeight {
  double exact = 0.0;
  double lower_bound = 0.0;
};

WedgeWeight weight_primary_wedge(const WedgePoint& w, int n, int r);

/// Determinant of the isotropy action on the ordered tangent basis for
/// h = diag(eps_1 R(theta_1), ..., eps_r R(theta_r), s) with the
/// membership constraint prod sgn(eps_i) * det(s) = 1. Always +1 for an
/// orientable cone; returned for verification.
double orientability_action(const std::vector<double>& x, const std::vector<double>& theta,
                            const std::vector<int>& eps, const Eigen::MatrixXd& s);

}  // namespace pfv
