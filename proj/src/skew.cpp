#include "pfv/skew.hpp"

#include <cmath>
#include <stdexcept>

namespace pfv {

namespace {

Eigen::MatrixXd exact_skew_part(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd s = 0.5 * (m - m.transpose());
  s.diagonal().setZero();
  // Force bit-exact antisymmetry: mirror the strict upper triangle.
  const int n = static_cast<int>(s.rows());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s(j, i) = -s(i, j);
  return s;
}

}  // namespace

SkewMatrix::SkewMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SkewMatrix: matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m + m.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-8 * scale))
    throw std::invalid_argument("SkewMatrix: input is not skew-symmetric");
  m_ = exact_skew_part(m);
}

SkewMatrix SkewMatrix::zero(int n) {
  if (n < 0) throw std::invalid_argument("SkewMatrix::zero: negative dimension");
  SkewMatrix s;
  s.m_ = Eigen::MatrixXd::Zero(n, n);
  return s;
}

SkewMatrix SkewMatrix::skew_part(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SkewMatrix: matrix must be square");
  SkewMatrix s;
  s.m_ = exact_skew_part(m);
  return s;
}

void SkewMatrix::set(int i, int j, double v) {
  if (i < 0 || j < 0 || i >= dim() || j >= dim() || i == j)
    throw std::invalid_argument("SkewMatrix::set: bad index pair");
  m_(i, j) = v;
  m_(j, i) = -v;
}

double SkewMatrix::squared_norm() const { return 0.5 * m_.squaredNorm(); }

double SkewMatrix::norm() const { return std::sqrt(squared_norm()); }

SkewMatrix SkewMatrix::conjugated(const Eigen::MatrixXd& q) const {
  if (q.rows() != dim() || q.cols() != dim())
    throw std::invalid_argument("SkewMatrix::conjugated: dimension mismatch");
  return skew_part(q * m_ * q.transpose());
}

SkewMatrix SkewMatrix::principal_submatrix(const std::vector<int>& indices) const {
  const int k = static_cast<int>(indices.size());
  for (int i = 0; i < k; ++i) {
    if (indices[i] < 0 || indices[i] >= dim())
      throw std::invalid_argument("principal_submatrix: index out of range");
    if (i > 0 && indices[i] <= indices[i - 1])
      throw std::invalid_argument("principal_submatrix: indices must strictly increase");
  }
  SkewMatrix s = zero(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) s.set(i, j, m_(indices[i], indices[j]));
  return s;
}

std::vector<double> SkewMatrix::upper_entries() const {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(dim()) * (dim() - 1) / 2);
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j) out.push_back(m_(i, j));
  return out;
}

SkewMatrix SkewMatrix::from_upper(int n, const std::vector<double>& upper) {
  if (n < 1) throw std::invalid_argument("from_upper: dimension must be >= 1");
  if (upper.size() != static_cast<size_t>(n) * (n - 1) / 2)
    throw std::invalid_argument("from_upper: entry count does not match n(n-1)/2");
  SkewMatrix s = zero(n);
  size_t p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.set(i, j, upper[p++]);
  return s;
}

SkewMatrix& SkewMatrix::operator+=(const SkewMatrix& o) {
  if (o.dim() != dim()) throw std::invalid_argument("SkewMatrix: dimension mismatch");
  m_ += o.m_;
  return *this;
}

SkewMatrix& SkewMatrix::operator-=(const SkewMatrix& o) {
  if (o.dim() != dim()) throw std::invalid_argument("SkewMatrix: dimension mismatch");
  m_ -= o.m_;
  return *this;
}

SkewMatrix& SkewMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

SkewMatrix operator+(SkewMatrix a, const SkewMatrix& b) { return a += b; }
SkewMatrix operator-(SkewMatrix a, const SkewMatrix& b) { return a -= b; }
SkewMatrix operator*(double s, SkewMatrix a) { return a *= s; }

double inner(const SkewMatrix& a, const SkewMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  return 0.5 * a.mat().cwiseProduct(b.mat()).sum();
}

SkewMatrix basis_matrix(int n, int i, int j) {
  if (!(0 <= i && i < j && j < n)) throw std::invalid_argument("basis_matrix: need 0 <= i < j < n");
  SkewMatrix s = SkewMatrix::zero(n);
  s.set(i, j, 1.0);
  return s;
}

SkewMatrix pair_matrix(int n, const std::vector<double>& x) {
  if (2 * static_cast<int>(x.size()) > n)
    throw std::invalid_argument("pair_matrix: too many pairs for dimension");
  SkewMatrix s = SkewMatrix::zero(n);
  for (size_t i = 0; i < x.size(); ++i) s.set(2 * static_cast<int>(i), 2 * static_cast<int>(i) + 1, x[i]);
  return s;
}

double Rng::uniform() {
  // 53 random bits mapped to (0, 1); never returns an endpoint.
  return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53;
}

double Rng::gauss() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * M_PI * u2;
  spare_ = rad * std::sin(ang);
  has_spare_ = true;
  return rad * std::cos(ang);
}

int Rng::index(int m) {
  if (m <= 0) throw std::invalid_argument("Rng::index: need positive bound");
  return static_cast<int>(gen_() % static_cast<uint64_t>(m));
}

uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  // splitmix64 over the combined value; decorrelates consecutive streams.
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Eigen::MatrixXd random_special_orthogonal(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_special_orthogonal: need n >= 1");
  Rng rng(seed);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gauss();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
  return q;
}

SkewMatrix random_skew(int n, uint64_t seed, double scale) {
  Rng rng(seed);
  SkewMatrix s = SkewMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.set(i, j, scale * rng.gauss());
  return s;
}

}  // namespace pfv
