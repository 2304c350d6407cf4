#include "qverify/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace qverify {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int qubit_count(std::size_t dim) {
  if (!is_power_of_two(dim)) fail(ErrorCode::BadDim, "dimension " + std::to_string(dim) + " is not a power of two");
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// Ket

Ket::Ket(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (!is_power_of_two(dim())) fail(ErrorCode::BadDim, "ket dimension " + std::to_string(dim()) + " is not a power of two");
  const double norm = amps_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol::kStructural) {
    fail(ErrorCode::NotNormalized, "ket norm deviates from 1 by " + std::to_string(std::abs(norm - 1.0)));
  }
}

Ket Ket::normalized(const CVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) fail(ErrorCode::NotNormalized, "cannot normalize a zero vector");
  return Ket(v / norm);
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) fail(ErrorCode::BadDim, "basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return Ket(std::move(v));
}

// ---------------------------------------------------------------------------
// HermitianOperator

double hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(CMatrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) fail(ErrorCode::BadDim, "operator is not square");
  if (!is_power_of_two(dim())) fail(ErrorCode::BadDim, "operator dimension " + std::to_string(dim()) + " is not a power of two");
  const double defect = hermiticity_defect(m_);
  if (!(defect <= tol::kStructural)) {
    fail(ErrorCode::NonHermitian, "max|A - A^dagger| = " + std::to_string(defect));
  }
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  return HermitianOperator(CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

HermitianOperator HermitianOperator::projector_onto(const Ket& k) { return HermitianOperator(k.projector()); }

double HermitianOperator::expectation(const Ket& k) const {
  if (k.dim() != dim()) fail(ErrorCode::BadDim, "ket/operator dimension mismatch");
  return k.amplitudes().dot(m_ * k.amplitudes()).real();
}

double HermitianOperator::expectation(const HermitianOperator& rho) const {
  if (rho.dim() != dim()) fail(ErrorCode::BadDim, "operator dimension mismatch");
  // tr(A B) = sum_ij A_ij B_ji
  return (m_.transpose().cwiseProduct(rho.m_)).sum().real();
}

HermitianOperator HermitianOperator::conjugated(const CMatrix& u) const {
  if (u.rows() != m_.rows() || u.cols() != m_.cols()) fail(ErrorCode::BadDim, "conjugation dimension mismatch");
  CMatrix r = u * m_ * u.adjoint();
  // Clean the rounding asymmetry so the result re-validates.
  r = 0.5 * (r + r.adjoint()).eval();
  return HermitianOperator(std::move(r));
}

// ---------------------------------------------------------------------------
// tensor products

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return r;
}

Ket tensor(const Ket& a, const Ket& b) {
  CVector r(static_cast<Eigen::Index>(a.dim() * b.dim()));
  const auto nb = static_cast<Eigen::Index>(b.dim());
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dim()); ++i) {
    r.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  }
  return Ket::normalized(r);
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// spectra

namespace {

void fix_phase(CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8) {
      v *= std::conj(v(i)) / std::abs(v(i));
      return;
    }
  }
}

double rounded(double x) { return std::round(x * 1e9) / 1e9; }

// true when a should precede b among degenerate eigenvectors
bool lex_greater(const CVector& a, const CVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double ar = rounded(a(i).real()), br = rounded(b(i).real());
    if (ar != br) return ar > br;
    const double ai = rounded(a(i).imag()), bi = rounded(b(i).imag());
    if (ai != bi) return ai > bi;
  }
  return false;
}

struct Eigenpair {
  double value;
  CVector vec;
};

std::vector<Eigenpair> sorted_eigenpairs(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) fail(ErrorCode::InvariantViolation, "eigensolver did not converge");
  const auto n = m.rows();
  std::vector<Eigenpair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    CVector v = solver.eigenvectors().col(i);
    fix_phase(v);
    pairs.push_back({solver.eigenvalues()(i), std::move(v)});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Eigenpair& a, const Eigenpair& b) { return a.value > b.value; });
  // Reorder clusters of (numerically) equal eigenvalues.
  std::size_t start = 0;
  while (start < pairs.size()) {
    std::size_t end = start + 1;
    while (end < pairs.size() && pairs[start].value - pairs[end].value <= tol::kTieBreak) ++end;
    std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(start), pairs.begin() + static_cast<std::ptrdiff_t>(end),
                     [](const Eigenpair& a, const Eigenpair& b) { return lex_greater(a.vec, b.vec); });
    start = end;
  }
  return pairs;
}

}  // namespace

CMatrix Spectrum::reconstruct() const {
  if (eigenvectors.empty()) return {};
  const auto d = static_cast<Eigen::Index>(eigenvectors.front().dim());
  CMatrix r = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    r += eigenvalues[i] * eigenvectors[i].projector();
  }
  return r;
}

Spectrum eig_hermitian(const HermitianOperator& op) {
  Spectrum s;
  for (auto& p : sorted_eigenpairs(op.matrix())) {
    s.eigenvalues.push_back(p.value);
    s.eigenvectors.push_back(Ket::normalized(p.vec));
  }
  return s;
}

BlockSpectrum eig_hermitian_block(const CMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::BadDim, "block is not square");
  if (!(hermiticity_defect(m) <= tol::kStructural)) fail(ErrorCode::NonHermitian, "block is not Hermitian");
  auto pairs = sorted_eigenpairs(m);
  BlockSpectrum s;
  s.vectors.resize(m.rows(), m.cols());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    s.values.push_back(pairs[i].value);
    s.vectors.col(static_cast<Eigen::Index>(i)) = pairs[i].vec.normalized();
  }
  return s;
}

std::vector<double> eigenvalues_hermitian(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

HermitianOperator partial_transpose_qubit2(const HermitianOperator& op) {
  if (op.dim() != 4) fail(ErrorCode::BadDim, "partial transpose requires a two-qubit operator");
  CMatrix r(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) r(2 * a + d, 2 * c + b) = op.matrix()(2 * a + b, 2 * c + d);
  return HermitianOperator(std::move(r));
}

double projector_defect(const CMatrix& p) { return (p * p - p).cwiseAbs().maxCoeff(); }

bool is_projector(const CMatrix& p, double tolerance) {
  if (p.rows() != p.cols() || hermiticity_defect(p) > tol::kStructural) return false;
  if (projector_defect(p) > tolerance) return false;
  for (double ev : eigenvalues_hermitian(p)) {
    if (std::abs(ev) > tolerance && std::abs(ev - 1.0) > tolerance) return false;
  }
  return true;
}

bool is_unitary(const CMatrix& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  const CMatrix d = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff() <= tolerance;
}

CMatrix orthocomplement_basis(const Ket& k) {
  const auto d = static_cast<Eigen::Index>(k.dim());
  // Householder QR of the single column k: Q's first column is k up to
  // phase, the remaining d-1 columns span the complement.
  Eigen::HouseholderQR<CMatrix> qr(CMatrix(k.amplitudes()));
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  return q.rightCols(d - 1);
}

Ket haar_random_ket(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) fail(ErrorCode::BadDim, "dimension must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(gen);
    const double im = normal(gen);
    v(i) = cplx(re, im);
  }
  return Ket::normalized(v);
}

CMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = cplx(re, im);
    }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so that Q is Haar distributed.
  for (Eigen::Index j = 0; j < d; ++j) {
    const cplx rd = r(j, j);
    const double a = std::abs(rd);
    if (a > 0) q.col(j) *= rd / a;
  }
  return q;
}

namespace pauli {
CMatrix I() { return CMatrix::Identity(2, 2); }
CMatrix X() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
CMatrix Y() {
  CMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
CMatrix Z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

}  // namespace qverify
