#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qverify/qcore.hpp"
#include "qverify/strategy.hpp"

using namespace qverify;

namespace {

bool throws_code(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_SUITE("qcore") {

TEST_CASE("tensor products of basis states and operators") {
  const auto i4 = tensor(HermitianOperator(pauli::I()), HermitianOperator(pauli::I()));
  CHECK((i4.matrix() - CMatrix::Identity(4, 4)).norm() == 0.0);

  const auto zz = tensor(HermitianOperator(pauli::Z()), HermitianOperator(pauli::Z()));
  const Ket k00 = Ket::basis(4, 0);
  CHECK((zz.matrix() * k00.amplitudes() - k00.amplitudes()).norm() == 0.0);

  const Ket k01 = tensor(Ket::basis(2, 0), Ket::basis(2, 1));
  CHECK((k01.amplitudes() - Ket::basis(4, 1).amplitudes()).norm() == 0.0);
}

TEST_CASE("ket and operator validation") {
  CHECK(throws_code(ErrorCode::BadDim, [] { Ket(CVector::Ones(3) / std::sqrt(3.0)); }));
  CHECK(throws_code(ErrorCode::NotNormalized, [] { Ket(CVector::Ones(4)); }));
  CHECK(throws_code(ErrorCode::NotNormalized, [] { Ket::normalized(CVector::Zero(2)); }));
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK(throws_code(ErrorCode::NonHermitian, [&] { HermitianOperator{m}; }));
  CHECK(throws_code(ErrorCode::BadDim, [] { HermitianOperator(CMatrix::Identity(3, 3)); }));
  CHECK(hermiticity_defect(m) == doctest::Approx(1.0));
}

TEST_CASE("spectra of simple operators") {
  const auto s = eig_hermitian(HermitianOperator::identity(4));
  for (double v : s.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  const auto zz = correlation_projector(pauli::Z(), pauli::Z());
  const auto e = eig_hermitian(zz).eigenvalues;
  REQUIRE(e.size() == 4);
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == doctest::Approx(1.0));
  CHECK(std::abs(e[2]) < 1e-14);
  CHECK(std::abs(e[3]) < 1e-14);

  const auto b = eig_hermitian(bell_strategy().omega()).eigenvalues;
  CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(b[static_cast<std::size_t>(i)] == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("spectral decomposition reconstructs and is deterministic") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CMatrix u = haar_random_unitary(8, seed);
    CMatrix d = CMatrix::Zero(8, 8);
    // repeated eigenvalues exercise the tie-break
    const double vals[8] = {0.9, 0.9, 0.9, 0.5, 0.5, 0.1, 0.0, -0.3};
    for (int i = 0; i < 8; ++i) d(i, i) = vals[i];
    CMatrix m = u * d * u.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    const HermitianOperator op(m);
    const Spectrum s1 = eig_hermitian(op);
    const Spectrum s2 = eig_hermitian(op);
    CHECK((s1.reconstruct() - m).norm() < 1e-12);
    for (std::size_t i = 0; i + 1 < 8; ++i) CHECK(s1.eigenvalues[i] >= s1.eigenvalues[i + 1] - tol::kTieBreak);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(s1.eigenvalues[i] == s2.eigenvalues[i]);
      CHECK((s1.eigenvectors[i].amplitudes() - s2.eigenvectors[i].amplitudes()).norm() == 0.0);
    }
  }
}

TEST_CASE("partial transpose") {
  const auto id = partial_transpose_qubit2(HermitianOperator::identity(4));
  CHECK((id.matrix() - CMatrix::Identity(4, 4)).norm() == 0.0);

  const auto pt = partial_transpose_qubit2(HermitianOperator::projector_onto(bell_phi_plus()));
  const auto ev = eigenvalues_hermitian(pt.matrix());
  CHECK(*std::min_element(ev.begin(), ev.end()) == doctest::Approx(-0.5).epsilon(1e-12));

  const auto p01 = HermitianOperator::projector_onto(Ket::basis(4, 1));
  CHECK((partial_transpose_qubit2(p01).matrix() - p01.matrix()).norm() == 0.0);

  // direct index formula: <ab|A^T2|cd> = <ad|A|cb>
  const CMatrix u = haar_random_unitary(4, 11);
  const CMatrix h = u + u.adjoint();
  const auto t = partial_transpose_qubit2(HermitianOperator(h)).matrix();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) CHECK(std::abs(t(2 * a + b, 2 * c + d) - h(2 * a + d, 2 * c + b)) < 1e-15);
}

TEST_CASE("projector and unitary predicates") {
  CHECK(is_projector(correlation_projector(pauli::X(), pauli::X()).matrix()));
  CHECK_FALSE(is_projector(bell_strategy().omega().matrix()));
  CHECK(is_unitary(haar_random_unitary(8, 3)));
  CHECK_FALSE(is_unitary(2.0 * CMatrix::Identity(2, 2)));
}

TEST_CASE("orthocomplement basis") {
  const Ket k = haar_random_ket(8, 5);
  const CMatrix b = orthocomplement_basis(k);
  CHECK(b.cols() == 7);
  CHECK((b.adjoint() * b - CMatrix::Identity(7, 7)).norm() < 1e-12);
  CHECK((b.adjoint() * k.amplitudes()).norm() < 1e-12);
}

TEST_CASE("Haar sampling") {
  for (std::uint64_t s : {0ull, 1ull, 99ull, 123456789ull}) {
    const Ket a = haar_random_ket(4, s);
    CHECK(std::abs(a.amplitudes().norm() - 1.0) < 1e-12);
    const Ket b = haar_random_ket(4, s);
    CHECK((a.amplitudes() - b.amplitudes()).norm() == 0.0);
  }
  // E|<0|psi>|^2 = 1/4 at dimension 4; Var = 3/80
  const int draws = 100000;
  double sum = 0;
  for (int i = 0; i < draws; ++i) sum += std::norm(haar_random_ket(4, static_cast<std::uint64_t>(i))[0]);
  const double mean = sum / draws;
  const double sigma = std::sqrt(3.0 / 80.0 / draws);
  CHECK(std::abs(mean - 0.25) < 3 * sigma);
}

}  // TEST_SUITE
