#pragma once

// Sign-bearing Pauli strings in symplectic (x|z) form, stabilizer groups and
// the stabilizer-based verification strategies.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qverify/qcore.hpp"
#include "qverify/strategy.hpp"

namespace qverify {

// sign * P_0 (x) P_1 (x) ... (x) P_{n-1}; qubit 0 is the leftmost factor and
// the most significant bit of a computational-basis index. Bit k of x/z
// belongs to qubit k. (x,z) = (1,0) X, (0,1) Z, (1,1) Y.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n, std::uint64_t x, std::uint64_t z, int sign = +1);

  static PauliString identity(int n);
  // "-XZY", "+XX" or "ZZ"; characters I X Y Z.
  static PauliString parse(const std::string& text);

  int num_qubits() const { return n_; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }
  int sign() const { return sign_; }
  char letter(int qubit) const;
  bool is_identity_up_to_sign() const { return x_ == 0 && z_ == 0; }
  int weight() const;

  bool commutes_with(const PauliString& other) const;

  // Product with the phase i^k it carries; k in {0,1,2,3}.
  struct PhasedProduct;
  PhasedProduct times(const PauliString& other) const;
  // Real-signed product; ImaginaryPhase when the factors anticommute.
  PauliString operator*(const PauliString& other) const;

  PauliString negated() const { return PauliString(n_, x_, z_, -sign_); }

  std::string to_string() const;  // "-YY", "XX"

  CMatrix dense() const;
  // (1 + P) / 2
  HermitianOperator positive_projector() const;
  // P |v>, without forming the dense matrix.
  CVector apply(const CVector& v) const;

  bool operator==(const PauliString& o) const = default;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int sign_ = +1;
};

struct PauliString::PhasedProduct {
  PauliString pauli;  // carries the +-1 part of the phase in its sign
  int i_power;        // 0 or 1: remaining factor i^i_power
};

class StabilizerGroup {
 public:
  const std::vector<PauliString>& generators() const { return generators_; }
  int num_qubits() const { return n_; }
  std::size_t order() const { return std::size_t{1} << n_; }

  // Element m is the product of generators j with bit j of m set; element 0
  // is the identity.
  PauliString element(std::size_t m) const;
  std::vector<PauliString> elements() const;

  // The unique stabilized state, by projecting computational basis states
  // through prod_j (1 + M_j)/2.
  Ket stabilized_state() const;

 private:
  friend StabilizerGroup group_from_generators(const std::vector<PauliString>&);
  int n_ = 0;
  std::vector<PauliString> generators_;
};

// Errors: NonCommuting, DependentGenerators, InconsistentSigns (-1 in the
// group), BadDim for mismatched lengths or N outside [1, 12].
StabilizerGroup group_from_generators(const std::vector<PauliString>& generators);
StabilizerGroup group_from_strings(const std::vector<std::string>& generators);

// Named presets: "bell", "ghz<N>", "cluster<N>" (linear), "zero<N>".
StabilizerGroup stabilizer_preset(const std::string& name);

// GF(2) rank of the symplectic vectors.
int symplectic_rank(const std::vector<PauliString>& paulis);

// Every non-identity element with weight 1/(2^N - 1).
Strategy full_stabilizer_strategy(const StabilizerGroup& g);
// The N generators with weight 1/N.
Strategy generator_strategy(const StabilizerGroup& g);

// Outcome of using only some group elements: either a valid strategy or a
// certified fooling state orthogonal to the target that always passes.
struct DegenerateSubset {
  Ket fooling_state;
  double acceptance;      // <fool|Omega_subset|fool>
  int stabilized_dim;     // dimension of the joint +1 eigenspace
};
using SubsetOutcome = std::variant<Strategy, DegenerateSubset>;

// indices into elements(); must be nonempty and exclude 0 (identity).
SubsetOutcome subset_strategy(const StabilizerGroup& g, const std::vector<std::size_t>& indices);

struct ParityCheck {
  int num_qubits = 0;
  // matrix[j][k] = 1 iff generator j fixes eigenbasis state k. Column k is
  // the joint eigenstate whose generator-j eigenvalue is -1 exactly when bit
  // j of k is set; column 0 is the target.
  std::vector<std::vector<std::uint8_t>> matrix;
  std::vector<double> weights;  // E_k = sum_j mu_j eps_jk
  std::vector<std::size_t> special_columns;  // the N columns with sum N-1
  std::vector<Ket> special_states;           // |lambda_k> for those columns
  bool dense_verified = false;               // eigenbasis checked densely (N <= 6)

  double max_special_weight() const;
};

inline constexpr int kDenseCheckMaxQubits = 6;

// Defaults to uniform weights 1/N.
ParityCheck parity_check(const StabilizerGroup& g, std::optional<std::vector<double>> mu = std::nullopt);

// Joint eigenstate of the generators with sign pattern `pattern`.
Ket joint_eigenstate(const StabilizerGroup& g, std::uint64_t pattern);

nlohmann::json group_to_json(const StabilizerGroup& g);
StabilizerGroup group_from_json(const nlohmann::json& j);

}  // namespace qverify
