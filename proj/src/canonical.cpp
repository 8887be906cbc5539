#include "pfv/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace pfv {

namespace {

// Pairs numerically indistinguishable from zero are routed to the kernel
// block rather than kept as spurious tiny pairs.
constexpr double kPairFloor = 1e-13;

}  // namespace

SkewMatrix CanonicalForm::reconstruct() const {
  return pair_matrix(n, pairs).conjugated(q);
}

CanonicalForm canonical_decompose(const SkewMatrix& m, double tol) {
  if (!(tol > 0.0 && tol < 1.0))
    throw std::invalid_argument("canonical_decompose: tol must lie in (0, 1)");
  const int n = m.dim();
  CanonicalForm form;
  form.n = n;
  form.q = Eigen::MatrixXd::Identity(n, n);
  if (n == 0) return form;

  const double scale = m.mat().cwiseAbs().maxCoeff();
  if (scale == 0.0) return form;  // zero matrix: empty pairs, identity frame

  // Hermitian eigenproblem for i * (m / scale): real eigenvalues +-x_i/scale.
  Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * (m.mat() / scale);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("canonical_decompose: eigensolver failed");

  const Eigen::VectorXd& w = es.eigenvalues();
  const double wmax = w.cwiseAbs().maxCoeff();
  // Indices of positive eigenvalues, sorted descending by value.
  std::vector<int> pos;
  for (int j = 0; j < n; ++j)
    if (w(j) > kPairFloor * wmax) pos.push_back(j);
  std::sort(pos.begin(), pos.end(), [&](int a, int b) { return w(a) > w(b); });
  const int k = static_cast<int>(pos.size());

  // Each eigenvector u = a + i b for eigenvalue x > 0 satisfies
  // m a = x b, m b = -x a with |a| = |b| = 1/sqrt(2), a ⟂ b, and vectors
  // from distinct eigenpairs are mutually orthogonal. Ordering the plane
  // as (sqrt(2) b, sqrt(2) a) realizes the +x convention of X_{2i,2i+1}.
  Eigen::MatrixXd u(n, 2 * k);
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXcd vec = es.eigenvectors().col(pos[i]);
    u.col(2 * i) = std::sqrt(2.0) * vec.imag();
    u.col(2 * i + 1) = std::sqrt(2.0) * vec.real();
    form.pairs.push_back(scale * w(pos[i]));
  }

  form.q.leftCols(2 * k) = u;
  if (2 * k < n) {
    // Complete with an orthonormal kernel basis: the trailing columns of a
    // full QR of the pair block span its orthogonal complement.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(u);
    Eigen::MatrixXd full = qr.householderQ();
    form.q.rightCols(n - 2 * k) = full.rightCols(n - 2 * k);
  }

  if (form.q.determinant() < 0.0) {
    if (2 * k < n) {
      form.q.col(n - 1) = -form.q.col(n - 1);  // kernel flip, reconstruction unchanged
    }
    // else: full rank with negative Pfaffian; det(q) = -1 is forced (see header).
  }

  form.rank = 0;
  if (!form.pairs.empty()) {
    const double x1 = form.pairs.front();
    for (double x : form.pairs)
      if (x > tol * x1) form.rank += 2;
  }
  return form;
}

SkewSVD skew_svd(const SkewMatrix& m) {
  const CanonicalForm form = canonical_decompose(m);
  const int n = m.dim();
  const int k = form.pair_count();
  SkewSVD out;
  out.v = form.q;
  out.sigma = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < k; ++i) {
    out.sigma(2 * i) = form.pairs[i];
    out.sigma(2 * i + 1) = form.pairs[i];
    p(2 * i, 2 * i) = 0.0;
    p(2 * i + 1, 2 * i + 1) = 0.0;
    p(2 * i, 2 * i + 1) = 1.0;
    p(2 * i + 1, 2 * i) = -1.0;
  }
  out.u = form.q * p;
  return out;
}

}  // namespace pfv
