#pragma once

// Small dense complex linear algebra for states and operators on 2^N
// dimensional spaces. Backed by Eigen; all values are immutable once built.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qverify/error.hpp"

namespace qverify {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace tol {
inline constexpr double kStructural = 1e-12;  // checks on caller input
inline constexpr double kDerived = 1e-10;     // checks on computed results
inline constexpr double kTieBreak = 1e-10;    // eigenvalue clustering
}  // namespace tol

inline constexpr int kMaxQubits = 12;

bool is_power_of_two(std::size_t n);
// log2 of a power of two; BadDim otherwise.
int qubit_count(std::size_t dim);

// Unit vector in a 2^N dimensional space.
class Ket {
 public:
  // Validates dim and norm (|norm - 1| <= 1e-12).
  explicit Ket(CVector amplitudes);
  // Normalizes first; fails on a zero vector.
  static Ket normalized(const CVector& v);
  static Ket basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  // <this|other>
  cplx overlap(const Ket& other) const { return amps_.dot(other.amps_); }
  CMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  CVector amps_;
};

class HermitianOperator {
 public:
  // Validates max|A - A^dagger| <= 1e-12 and a power-of-two dimension.
  explicit HermitianOperator(CMatrix entries);
  static HermitianOperator identity(std::size_t dim);
  static HermitianOperator projector_onto(const Ket& k);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  double trace() const { return m_.trace().real(); }
  double expectation(const Ket& k) const;
  double expectation(const HermitianOperator& rho) const;  // tr(A rho)

  // A U^dagger-style conjugation, U A U^dagger.
  HermitianOperator conjugated(const CMatrix& u) const;

 private:
  CMatrix m_;
};

double hermiticity_defect(const CMatrix& m);

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  std::vector<Ket> eigenvectors;

  CMatrix reconstruct() const;
};

Ket tensor(const Ket& a, const Ket& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Full eigendecomposition, eigenvalues descending. Each eigenvector has its
// first non-negligible amplitude made real positive; eigenvalues equal within
// 1e-10 are ordered by descending lexicographic comparison of the rounded
// amplitudes (re, im), so output is deterministic.
Spectrum eig_hermitian(const HermitianOperator& op);
// Same ordering rules for an arbitrary-size Hermitian block (e.g. an
// operator restricted to the complement of a state).
struct BlockSpectrum {
  std::vector<double> values;  // descending
  CMatrix vectors;             // columns, matching values
};
BlockSpectrum eig_hermitian_block(const CMatrix& m);
std::vector<double> eigenvalues_hermitian(const CMatrix& m);

// Transpose on the second qubit of a two-qubit operator.
HermitianOperator partial_transpose_qubit2(const HermitianOperator& op);

// max|P^2 - P|, and whether every eigenvalue is within tol of 0 or 1.
double projector_defect(const CMatrix& p);
bool is_projector(const CMatrix& p, double tol = tol::kDerived);
bool is_unitary(const CMatrix& u, double tol = tol::kStructural);

// Orthonormal basis (dim x dim-1, as columns) of the complement of k.
CMatrix orthocomplement_basis(const Ket& k);

// Haar-distributed unit vector / unitary. Same seed gives identical output.
Ket haar_random_ket(std::size_t dim, std::uint64_t seed);
CMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed);

namespace pauli {
CMatrix I();
CMatrix X();
CMatrix Y();
CMatrix Z();
}  // namespace pauli

}  // namespace qverify
