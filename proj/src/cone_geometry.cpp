#include "pfv/cone_geometry.hpp"

#include "pfv/errors.hpp"
#include "pfv/variety.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace pfv {

namespace {

void check_descending_positive(const std::vector<double>& x, const char* who) {
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw std::invalid_argument(std::string(who) + ": values must be positive");
    if (i > 0 && !(x[i - 1] > x[i]))
      throw std::invalid_argument(std::string(who) + ": values must strictly descend");
  }
}

void check_spec_args(const std::vector<double>& x, int n, int r, const char* who) {
  if (r != static_cast<int>(x.size()))
    throw std::invalid_argument(std::string(who) + ": x length must equal r");
  if (n < 2 || r < 0 || 2 * r > n - 2)
    throw std::invalid_argument(std::string(who) + ": need 0 <= r <= floor(n/2) - 1");
  check_descending_positive(x, who);
}

/// exp(angle * X_ij): a Givens rotation in the (i, j) plane.
Eigen::MatrixXd givens(int n, int i, int j, double angle) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  g(i, i) = c;
  g(j, j) = c;
  g(i, j) = s;
  g(j, i) = -s;
  return g;
}

/// Rotation-parameter index pairs in tangent order (everything after the
/// r slice parameters).
std::vector<std::pair<int, int>> rotation_parameter_order(int n, int r) {
  std::vector<std::pair<int, int>> s;
  for (int p = 0; p < r; ++p)
    for (int q = p + 1; q < r; ++q) {
      s.emplace_back(2 * p, 2 * q);
      s.emplace_back(2 * p, 2 * q + 1);
      s.emplace_back(2 * p + 1, 2 * q);
      s.emplace_back(2 * p + 1, 2 * q + 1);
    }
  for (int i = 0; i < r; ++i) {
    for (int a = 2 * r; a < n; ++a) s.emplace_back(2 * i, a);
    for (int a = 2 * r; a < n; ++a) s.emplace_back(2 * i + 1, a);
  }
  return s;
}

}  // namespace

std::vector<std::pair<int, int>> tangent_basis_order(int n, int r) {
  std::vector<std::pair<int, int>> basis;
  for (int i = 0; i < r; ++i) basis.emplace_back(2 * i, 2 * i + 1);
  const auto rot = rotation_parameter_order(n, r);
  basis.insert(basis.end(), rot.begin(), rot.end());
  return basis;
}

std::vector<std::pair<int, int>> normal_basis_order(int n, int r) {
  std::vector<std::pair<int, int>> basis;
  for (int a = 2 * r; a < n; ++a)
    for (int b = a + 1; b < n; ++b) basis.emplace_back(a, b);
  return basis;
}

WedgePoint::WedgePoint(std::vector<double> x_, double t_, SkewMatrix b_)
    : x(std::move(x_)), t(t_), b(std::move(b_)) {
  if (x.empty()) throw std::invalid_argument("WedgePoint: need at least one pair");
  if (b.dim() < 2) throw std::invalid_argument("WedgePoint: normal block must have size >= 2");
  check_descending_positive(x, "WedgePoint");
  if (std::abs(b.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("WedgePoint: normal block must have unit norm");
  if (!(std::abs(t) < x.back()))
    throw FocalRadiusError("WedgePoint: |t| must stay below the focal radius x_r");
}

SkewMatrix WedgePoint::ambient() const {
  SkewMatrix m = pair_matrix(n(), x);
  const int off = 2 * r();
  for (int i = 0; i < b.dim(); ++i)
    for (int j = i + 1; j < b.dim(); ++j) m.set(off + i, off + j, t * b(i, j));
  return m;
}

double weight_primary(const std::vector<double>& x, int n, int r) {
  check_spec_args(x, n, r, "weight_primary");
  double w = 1.0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const double d = x[i] * x[i] - x[j] * x[j];
      w *= d * d;
    }
  for (int i = 0; i < r; ++i) w *= std::pow(x[i], 2.0 * (n - 2 * r));
  return w;
}

ParametrizationJacobian parametrization_jacobian(const std::vector<double>& x, int n, int r,
                                                 double step) {
  check_spec_args(x, n, r, "parametrization_jacobian");
  if (!(step > 0.0)) throw std::invalid_argument("parametrization_jacobian: step must be positive");

  const auto rows = [&] {
    auto t = tangent_basis_order(n, r);
    const auto nb = normal_basis_order(n, r);
    t.insert(t.end(), nb.begin(), nb.end());
    return t;
  }();
  const auto rot = rotation_parameter_order(n, r);
  const int dim = r + static_cast<int>(rot.size());
  const int ncoords = n * (n - 1) / 2;

  const SkewMatrix base = pair_matrix(n, x);
  ParametrizationJacobian out;
  out.n = n;
  out.r = r;
  out.df = Eigen::MatrixXd::Zero(ncoords, dim);

  // One Richardson pass over central differences: (4 D_{h/2} - D_h) / 3.
  const auto column = [&](const std::function<Eigen::MatrixXd(double)>& f, int col) {
    const auto central = [&](double h) {
      return ((f(h) - f(-h)) / (2.0 * h)).eval();
    };
    const Eigen::MatrixXd d = (4.0 * central(0.5 * step) - central(step)) / 3.0;
    for (size_t k = 0; k < rows.size(); ++k)
      out.df(static_cast<int>(k), col) = d(rows[k].first, rows[k].second);
  };

  for (int i = 0; i < r; ++i) {
    column(
        [&](double t) {
          std::vector<double> xt = x;
          xt[i] += t;
          return pair_matrix(n, xt).mat();
        },
        i);
  }
  for (size_t j = 0; j < rot.size(); ++j) {
    const auto [a, b] = rot[j];
    column(
        [&](double s) {
          const Eigen::MatrixXd g = givens(n, a, b, s);
          return (g * base.mat() * g.transpose()).eval();
        },
        r + static_cast<int>(j));
  }
  return out;
}

double ParametrizationJacobian::jacobian() const {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(df);
  double logj = 0.0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()(i);
    if (s <= 0.0) return 0.0;
    logj += std::log(s);
  }
  return std::exp(logj);
}

double ParametrizationJacobian::restricted_jacobian() const {
  const Eigen::MatrixXd slice = df.leftCols(r);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(slice);
  double logj = 0.0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()(i);
    if (s <= 0.0) return 0.0;
    logj += std::log(s);
  }
  return std::exp(logj);
}

Eigen::Matrix4d ParametrizationJacobian::g_block(int p, int q) const {
  if (!(0 <= p && p < q && q < r)) throw std::invalid_argument("g_block: need 0 <= p < q < r");
  int idx = 0;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      if (a == p && b == q) {
        const int off = r + 4 * idx;
        return df.block(off, off, 4, 4);
      }
      ++idx;
    }
  throw std::logic_error("g_block: unreachable");
}

Eigen::MatrixXd ParametrizationJacobian::h_block(int i) const {
  if (!(0 <= i && i < r)) throw std::invalid_argument("h_block: pair index out of range");
  const int m = n - 2 * r;
  const int off = r + 2 * r * (r - 1) + 2 * m * i;
  return df.block(off, off, 2 * m, 2 * m);
}

double weight_primary_numeric(const std::vector<double>& x, int n, int r, double step) {
  const ParametrizationJacobian pj = parametrization_jacobian(x, n, r, step);
  return pj.jacobian() / pj.restricted_jacobian();
}

ShapeOperator shape_operator(const std::vector<double>& x, const SkewMatrix& b) {
  const int m = b.dim();
  const int r = static_cast<int>(x.size());
  const int n = 2 * r + m;
  check_spec_args(x, n, r, "shape_operator");
  if (std::abs(b.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("shape_operator: normal block must have unit norm");

  ShapeOperator out;
  out.basis = tangent_basis_order(n, r);
  const int dim = static_cast<int>(out.basis.size());
  out.matrix = Eigen::MatrixXd::Zero(dim, dim);
  const int raising_off = r + 2 * r * (r - 1);
  for (int i = 0; i < r; ++i) {
    const int off = raising_off + 2 * m * i;
    // Block [[0, B^T / x_i], [B / x_i, 0]] over (X_{2i,a} | X_{2i+1,a}).
    out.matrix.block(off, off + m, m, m) = b.mat().transpose() / x[i];
    out.matrix.block(off + m, off, m, m) = b.mat() / x[i];
  }
  return out;
}

SkewMatrix second_fundamental_numeric(const std::vector<double>& x, int n, int r,
                                      std::pair<int, int> first, std::pair<int, int> second,
                                      double step) {
  check_spec_args(x, n, r, "second_fundamental_numeric");
  if (!(step > 0.0)) throw std::invalid_argument("second_fundamental_numeric: bad step");
  const auto check_pair = [&](std::pair<int, int> p) {
    if (!(0 <= p.first && p.first < p.second && p.second < n) || p.first >= 2 * r)
      throw std::invalid_argument("second_fundamental_numeric: not a tangent basis pair");
  };
  check_pair(first);
  check_pair(second);

  const VarietySpec spec(n, r);
  const SkewMatrix base = pair_matrix(n, x);
  const SkewMatrix u = basis_matrix(n, first.first, first.second);
  const SkewMatrix w = basis_matrix(n, second.first, second.second);
  const auto surf = [&](double y1, double y2) {
    return project(spec, base + y1 * u + y2 * w).point;
  };
  // Mixed central second difference of the in-variety surface.
  const SkewMatrix d2 = (1.0 / (4.0 * step * step)) *
                        (surf(step, step) - surf(step, -step) - surf(-step, step) +
                         surf(-step, -step));
  // Keep the normal component only, with the sign convention that the
  // raising value is -(1/x_i) X_{h,l}.
  SkewMatrix out = SkewMatrix::zero(n);
  for (const auto& [a, c] : normal_basis_order(n, r)) out.set(a, c, -d2(a, c));
  return out;
}

double wedge_determinant(const WedgePoint& w) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w.b.mat());
  const Eigen::VectorXd sv = svd.singularValues();
  double det = 1.0;
  for (double xi : w.x) {
    const double ratio = (w.t * w.t) / (xi * xi);
    for (int j = 0; j < sv.size(); ++j) det *= 1.0 - ratio * sv(j) * sv(j);
  }
  return det;
}

Lemma47Result lemma47_check(const Eigen::MatrixXd& s, double tau) {
  if (s.rows() != s.cols()) throw std::invalid_argument("lemma47_check: matrix must be square");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("lemma47_check: matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  const Eigen::VectorXd ev = es.eigenvalues();  // ascending
  const int n = static_cast<int>(ev.size());
  if (ev(0) < -1e-9) throw std::invalid_argument("lemma47_check: matrix must be PSD");
  if (std::abs(ev.sum() - 2.0) > 1e-9)
    throw std::invalid_argument("lemma47_check: trace must equal 2");
  for (int i = 0; i + 1 < n; i += 2)
    if (std::abs(ev(n - 1 - i) - ev(n - 2 - i)) > 1e-6)
      throw std::invalid_argument("lemma47_check: eigenvalues must come in pairs");
  if (n % 2 == 1 && std::abs(ev(0)) > 1e-6)
    throw std::invalid_argument("lemma47_check: odd dimension needs a zero eigenvalue");
  const double lmax = ev(n - 1);
  if (!(tau >= 0.0) || !(tau <= 1.0 / lmax + 1e-15))
    throw std::invalid_argument("lemma47_check: tau must lie in [0, 1/lambda_max]");

  Lemma47Result out;
  out.lhs = 1.0;
  for (int i = 0; i < n; ++i) out.lhs *= 1.0 - tau * ev(i);
  out.rhs = (1.0 - tau) * (1.0 - tau);
  out.ok = out.lhs >= out.rhs - 1e-12;
  return out;
}

WedgeWeight weight_primary_wedge(const WedgePoint& w, int n, int r) {
  if (w.n() != n || w.r() != r)
    throw std::invalid_argument("weight_primary_wedge: wedge point does not match (n, r)");
  WedgeWeight out;
  out.exact = weight_primary(w.x, n, r) * wedge_determinant(w);
  double lb = 1.0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const double d = w.x[i] * w.x[i] - w.x[j] * w.x[j];
      lb *= d * d;
    }
  for (int i = 0; i < r; ++i) lb *= std::pow(w.x[i], 2.0 * (n - 2 - 2 * r));
  for (int i = 0; i < r; ++i) {
    const double d = w.x[i] * w.x[i] - w.t * w.t;
    lb *= d * d;
  }
  out.lower_bound = lb;
  return out;
}

double orientability_action(const std::vector<double>& x, const std::vector<double>& theta,
                            const std::vector<int>& eps, const Eigen::MatrixXd& s) {
  const int r = static_cast<int>(x.size());
  const int m = static_cast<int>(s.rows());
  const int n = 2 * r + m;
  check_spec_args(x, n, r, "orientability_action");
  if (static_cast<int>(theta.size()) != r || static_cast<int>(eps.size()) != r)
    throw std::invalid_argument("orientability_action: need r angles and r signs");
  if (s.rows() != s.cols()) throw std::invalid_argument("orientability_action: s must be square");
  if ((s * s.transpose() - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("orientability_action: s must be orthogonal");
  double sign = 1.0;
  for (int e : eps) {
    if (e != 1 && e != -1) throw std::invalid_argument("orientability_action: signs must be +-1");
    sign *= e;
  }
  const double dets = s.determinant();
  if (std::abs(sign * dets - 1.0) > 1e-6)
    throw std::invalid_argument(
        "orientability_action: isotropy membership requires prod(eps) * det(s) = 1");

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < r; ++i) {
    const double c = std::cos(theta[i]);
    const double si = std::sin(theta[i]);
    h(2 * i, 2 * i) = eps[i] * c;
    h(2 * i, 2 * i + 1) = eps[i] * si;
    h(2 * i + 1, 2 * i) = -eps[i] * si;
    h(2 * i + 1, 2 * i + 1) = eps[i] * c;
  }
  h.block(2 * r, 2 * r, m, m) = s;

  const auto basis = tangent_basis_order(n, r);
  const int dim = static_cast<int>(basis.size());
  Eigen::MatrixXd action(dim, dim);
  for (int c = 0; c < dim; ++c) {
    const SkewMatrix img =
        basis_matrix(n, basis[c].first, basis[c].second).conjugated(h);
    for (int rrow = 0; rrow < dim; ++rrow)
      action(rrow, c) = img(basis[rrow].first, basis[rrow].second);
  }
  return action.determinant();
}

}  // namespace pfv
