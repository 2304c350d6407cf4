#pragma once

// Verification strategies: convex combinations Omega = sum_j mu_j P_j of
// pass projectors that accept a target state with certainty.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qverify/qcore.hpp"
#include "qverify/sample_count_report.hpp"

namespace qverify {

enum class Locality { ProductProjector, CorrelationTwoOutcome, StabilizerPauli, NonLocal };
enum class StrategyKind { Bell, TwoQubitOptimal, ProductState, StabilizerFull, StabilizerGenerators, Custom };
enum class ProductTarget { Zero, One };

std::string to_string(Locality l);
std::string to_string(StrategyKind k);
Locality locality_from_string(const std::string& s);
StrategyKind strategy_kind_from_string(const std::string& s);

// One measurement setting: the pass projector, its sampling weight and a
// locality tag. For two-qubit settings tagged as local the partial transpose
// of the projector must be positive semidefinite.
class MeasurementSetting {
 public:
  MeasurementSetting(HermitianOperator projector, double weight, std::string label, Locality locality);

  const HermitianOperator& projector() const { return projector_; }
  double weight() const { return weight_; }
  const std::string& label() const { return label_; }
  Locality locality() const { return locality_; }

  MeasurementSetting with_weight(double w) const;

 private:
  HermitianOperator projector_;
  double weight_;
  std::string label_;
  Locality locality_;
};

class Strategy {
 public:
  // Validates: weights sum to 1 (1e-12), Omega|psi> = |psi> (1e-10) and
  // 0 <= Omega <= 1 (1e-10). No silent renormalization.
  Strategy(Ket target, std::vector<MeasurementSetting> settings, StrategyKind kind,
           std::optional<double> theta = std::nullopt);

  const Ket& target() const { return target_; }
  const std::vector<MeasurementSetting>& settings() const { return settings_; }
  StrategyKind kind() const { return kind_; }
  std::optional<double> theta() const { return theta_; }
  const HermitianOperator& omega() const { return omega_; }
  std::size_t dim() const { return target_.dim(); }

 private:
  Ket target_;
  std::vector<MeasurementSetting> settings_;
  StrategyKind kind_;
  std::optional<double> theta_;
  HermitianOperator omega_;
};

struct StrategyMetrics {
  double q;  // largest acceptance probability of a state orthogonal to the target
  double trace;
  double second_eigenvalue_gap;  // 1 - q
  bool degenerate;               // q == 1: some orthogonal state always passes
  Ket worst_orthogonal;          // maximizer of <psi_perp|Omega|psi_perp>

  double delta_eps(double epsilon) const { return epsilon * (1.0 - q); }
};

// Largest eigenvalue of Omega restricted to the complement of target, and
// the corresponding eigenvector.
StrategyMetrics metrics(const Strategy& s);
StrategyMetrics metrics(const HermitianOperator& omega, const Ket& target);

// Two-qubit target sin(theta)|00> + cos(theta)|11>.
Ket two_qubit_target(double theta);
Ket bell_phi_plus();

// Projector onto the +1 eigenspace of sign * (a tensor b).
HermitianOperator correlation_projector(const CMatrix& a, const CMatrix& b, double sign = 1.0);

Strategy bell_strategy();

// Closed-form quantities of the optimal two-qubit strategy.
double two_qubit_alpha(double theta);  // weight on P+_ZZ
double two_qubit_q(double theta);      // (2 + sin 2t) / (4 + sin 2t)
// The three product states annihilated from the trace-3 part, k = 1..3.
Ket two_qubit_phi(double theta, int k);

inline constexpr double kSpecialThetaThreshold = 1e-9;

// Four-setting optimal strategy. ThetaOutOfDomain outside (0, pi/2);
// ThetaNearSpecialValue within 1e-9 of 0, pi/4 or pi/2.
Strategy two_qubit_optimal(double theta);
Strategy product_state_strategy(ProductTarget which);

// Conjugates every projector and the target by u (x) v.
Strategy local_transport(const Strategy& s, const CMatrix& u, const CMatrix& v);

// (1 - a) Omega + a * identity, realized by rescaling weights and adding an
// always-accept setting.
Strategy dilute_with_identity(const Strategy& s, double a);

// n_exact = ceil(ln(1/delta) / ln(1/(1 - Delta_eps))), Delta_eps = eps (1 - q).
SampleCountReport exact_sample_count(const Strategy& s, double epsilon, double delta);

nlohmann::json to_json(const Strategy& s);
Strategy strategy_from_json(const nlohmann::json& j);

}  // namespace qverify
