#include "qverify/strategy.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qverify {

std::string to_string(Locality l) {
  switch (l) {
    case Locality::ProductProjector: return "ProductProjector";
    case Locality::CorrelationTwoOutcome: return "CorrelationTwoOutcome";
    case Locality::StabilizerPauli: return "StabilizerPauli";
    case Locality::NonLocal: return "NonLocal";
  }
  return "NonLocal";
}

std::string to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::Bell: return "Bell";
    case StrategyKind::TwoQubitOptimal: return "TwoQubitOptimal";
    case StrategyKind::ProductState: return "ProductState";
    case StrategyKind::StabilizerFull: return "StabilizerFull";
    case StrategyKind::StabilizerGenerators: return "StabilizerGenerators";
    case StrategyKind::Custom: return "Custom";
  }
  return "Custom";
}

Locality locality_from_string(const std::string& s) {
  for (auto l : {Locality::ProductProjector, Locality::CorrelationTwoOutcome, Locality::StabilizerPauli, Locality::NonLocal}) {
    if (to_string(l) == s) return l;
  }
  fail(ErrorCode::ParseError, "unknown locality '" + s + "'");
}

StrategyKind strategy_kind_from_string(const std::string& s) {
  for (auto k : {StrategyKind::Bell, StrategyKind::TwoQubitOptimal, StrategyKind::ProductState, StrategyKind::StabilizerFull,
                 StrategyKind::StabilizerGenerators, StrategyKind::Custom}) {
    if (to_string(k) == s) return k;
  }
  fail(ErrorCode::ParseError, "unknown strategy kind '" + s + "'");
}

// ---------------------------------------------------------------------------

MeasurementSetting::MeasurementSetting(HermitianOperator projector, double weight, std::string label, Locality locality)
    : projector_(std::move(projector)), weight_(weight), label_(std::move(label)), locality_(locality) {
  if (!(weight_ > 0.0 && weight_ <= 1.0)) fail(ErrorCode::InvalidWeights, "setting '" + label_ + "' has weight outside (0,1]");
  if (!is_projector(projector_.matrix())) fail(ErrorCode::NotProjector, "setting '" + label_ + "' is not a projector");
  if (locality_ != Locality::NonLocal && projector_.dim() == 4) {
    const auto ev = eigenvalues_hermitian(partial_transpose_qubit2(projector_).matrix());
    if (ev.back() < -tol::kDerived) {
      fail(ErrorCode::NonSeparable, "setting '" + label_ + "' is tagged local but its partial transpose is not PSD");
    }
  }
}

MeasurementSetting MeasurementSetting::with_weight(double w) const {
  MeasurementSetting copy = *this;
  if (!(w > 0.0 && w <= 1.0)) fail(ErrorCode::InvalidWeights, "weight outside (0,1]");
  copy.weight_ = w;
  return copy;
}

namespace {

constexpr std::size_t kMaxDenseEntries = std::size_t{1} << 27;

HermitianOperator assemble_omega(const Ket& target, const std::vector<MeasurementSetting>& settings) {
  if (settings.empty()) fail(ErrorCode::InvalidWeights, "strategy has no settings");
  const auto d = static_cast<Eigen::Index>(target.dim());
  if (settings.size() * target.dim() * target.dim() > kMaxDenseEntries) {
    fail(ErrorCode::TooLarge, "dense strategy storage exceeds the supported size");
  }
  CMatrix omega = CMatrix::Zero(d, d);
  double total = 0.0;
  for (const auto& s : settings) {
    if (s.projector().dim() != target.dim()) fail(ErrorCode::BadDim, "setting dimension differs from the target");
    omega += s.weight() * s.projector().matrix();
    total += s.weight();
  }
  if (std::abs(total - 1.0) > tol::kStructural) {
    fail(ErrorCode::InvalidWeights, "weights sum to " + std::to_string(total) + ", not 1");
  }
  omega = 0.5 * (omega + omega.adjoint()).eval();
  return HermitianOperator(std::move(omega));
}

}  // namespace

Strategy::Strategy(Ket target, std::vector<MeasurementSetting> settings, StrategyKind kind, std::optional<double> theta)
    : target_(std::move(target)),
      settings_(std::move(settings)),
      kind_(kind),
      theta_(theta),
      omega_(assemble_omega(target_, settings_)) {
  const double residual = (omega_.matrix() * target_.amplitudes() - target_.amplitudes()).norm();
  if (residual > tol::kDerived) {
    fail(ErrorCode::TargetNotFixed, "|Omega psi - psi| = " + std::to_string(residual));
  }
  const auto ev = eigenvalues_hermitian(omega_.matrix());
  if (ev.front() > 1.0 + tol::kDerived || ev.back() < -tol::kDerived) {
    fail(ErrorCode::NotContraction, "Omega has eigenvalues outside [0,1]");
  }
}

// ---------------------------------------------------------------------------

StrategyMetrics metrics(const HermitianOperator& omega, const Ket& target) {
  if (omega.dim() != target.dim()) fail(ErrorCode::BadDim, "operator/target dimension mismatch");
  const CMatrix basis = orthocomplement_basis(target);
  CMatrix block = basis.adjoint() * omega.matrix() * basis;
  block = 0.5 * (block + block.adjoint()).eval();
  const BlockSpectrum spec = eig_hermitian_block(block);
  const double q = spec.values.front();
  Ket worst = Ket::normalized(basis * spec.vectors.col(0));
  return StrategyMetrics{q, omega.trace(), 1.0 - q, q >= 1.0 - tol::kDerived, std::move(worst)};
}

StrategyMetrics metrics(const Strategy& s) { return metrics(s.omega(), s.target()); }

Ket two_qubit_target(double theta) {
  CVector v = CVector::Zero(4);
  v(0) = std::sin(theta);
  v(3) = std::cos(theta);
  return Ket::normalized(v);
}

Ket bell_phi_plus() { return two_qubit_target(std::numbers::pi / 4); }

HermitianOperator correlation_projector(const CMatrix& a, const CMatrix& b, double sign) {
  const CMatrix ab = kron(a, b);
  const CMatrix id = CMatrix::Identity(ab.rows(), ab.cols());
  return HermitianOperator(0.5 * (id + sign * ab));
}

Strategy bell_strategy() {
  const double w = 1.0 / 3.0;
  std::vector<MeasurementSetting> settings{
      {correlation_projector(pauli::X(), pauli::X()), w, "XX", Locality::StabilizerPauli},
      {correlation_projector(pauli::Y(), pauli::Y(), -1.0), w, "-YY", Locality::StabilizerPauli},
      {correlation_projector(pauli::Z(), pauli::Z()), w, "ZZ", Locality::StabilizerPauli},
  };
  return Strategy(bell_phi_plus(), std::move(settings), StrategyKind::Bell, std::numbers::pi / 4);
}

double two_qubit_alpha(double theta) {
  const double s2 = std::sin(2 * theta);
  return (2 - s2) / (4 + s2);
}

double two_qubit_q(double theta) {
  const double s2 = std::sin(2 * theta);
  return (2 + s2) / (4 + s2);
}

Ket two_qubit_phi(double theta, int k) {
  using std::numbers::pi;
  const double a = 1.0 / std::sqrt(1.0 + std::tan(theta));
  const double b = 1.0 / std::sqrt(1.0 + 1.0 / std::tan(theta));
  // relative phases of the |1> components on each qubit
  double pa = 0.0, pb = 0.0;
  switch (k) {
    case 1: pa = 2 * pi / 3; pb = pi / 3; break;
    case 2: pa = 4 * pi / 3; pb = 5 * pi / 3; break;
    case 3: pa = 0.0; pb = pi; break;
    default: fail(ErrorCode::InvalidArgument, "two_qubit_phi index must be 1, 2 or 3");
  }
  CVector first(2), second(2);
  first << a, b * std::polar(1.0, pa);
  second << a, b * std::polar(1.0, pb);
  return tensor(Ket::normalized(first), Ket::normalized(second));
}

Strategy two_qubit_optimal(double theta) {
  using std::numbers::pi;
  if (!std::isfinite(theta) || theta <= 0.0 || theta >= pi / 2) {
    fail(ErrorCode::ThetaOutOfDomain, "theta must lie in (0, pi/2)");
  }
  if (theta < kSpecialThetaThreshold || theta > pi / 2 - kSpecialThetaThreshold ||
      std::abs(theta - pi / 4) < kSpecialThetaThreshold) {
    fail(ErrorCode::ThetaNearSpecialValue, "theta is at a special value; use the Bell or product-state strategy");
  }
  const double alpha = two_qubit_alpha(theta);
  const double w = (1.0 - alpha) / 3.0;
  std::vector<MeasurementSetting> settings;
  settings.emplace_back(correlation_projector(pauli::Z(), pauli::Z()), alpha, "ZZ", Locality::CorrelationTwoOutcome);
  const CMatrix id = CMatrix::Identity(4, 4);
  for (int k = 1; k <= 3; ++k) {
    const Ket phi = two_qubit_phi(theta, k);
    CMatrix p = id - phi.projector();
    p = 0.5 * (p + p.adjoint()).eval();
    settings.emplace_back(HermitianOperator(std::move(p)), w, "not-phi" + std::to_string(k), Locality::ProductProjector);
  }
  return Strategy(two_qubit_target(theta), std::move(settings), StrategyKind::TwoQubitOptimal, theta);
}

Strategy product_state_strategy(ProductTarget which) {
  const std::size_t idx = which == ProductTarget::Zero ? 0 : 3;
  const double theta = which == ProductTarget::Zero ? std::numbers::pi / 2 : 0.0;
  Ket target = Ket::basis(4, idx);
  std::vector<MeasurementSetting> settings{
      {HermitianOperator::projector_onto(target), 1.0, which == ProductTarget::Zero ? "|00><00|" : "|11><11|",
       Locality::ProductProjector}};
  return Strategy(std::move(target), std::move(settings), StrategyKind::ProductState, theta);
}

Strategy local_transport(const Strategy& s, const CMatrix& u, const CMatrix& v) {
  if (s.dim() != 4) fail(ErrorCode::BadDim, "local transport needs a two-qubit strategy");
  if (u.rows() != 2 || v.rows() != 2 || !is_unitary(u) || !is_unitary(v)) {
    fail(ErrorCode::NotUnitary, "local maps must be 2x2 unitaries");
  }
  const CMatrix w = kron(u, v);
  std::vector<MeasurementSetting> settings;
  settings.reserve(s.settings().size());
  for (const auto& m : s.settings()) {
    settings.emplace_back(m.projector().conjugated(w), m.weight(), m.label(), m.locality());
  }
  return Strategy(Ket::normalized(w * s.target().amplitudes()), std::move(settings), s.kind(), s.theta());
}

Strategy dilute_with_identity(const Strategy& s, double a) {
  if (!(a >= 0.0 && a <= 1.0)) fail(ErrorCode::InvalidArgument, "dilution must lie in [0,1]");
  std::vector<MeasurementSetting> settings;
  if (a < 1.0) {
    for (const auto& m : s.settings()) settings.push_back(m.with_weight((1.0 - a) * m.weight()));
  }
  if (a > 0.0) {
    settings.emplace_back(HermitianOperator::identity(s.dim()), a, "identity", Locality::ProductProjector);
  }
  return Strategy(s.target(), std::move(settings), StrategyKind::Custom, s.theta());
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json complex_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::ParseError, "complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

nlohmann::json to_json(const Strategy& s) {
  nlohmann::json j;
  j["kind"] = to_string(s.kind());
  if (s.theta()) j["theta"] = *s.theta();
  auto& target = j["target"] = nlohmann::json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) target.push_back(complex_json(s.target()[i]));
  auto& settings = j["settings"] = nlohmann::json::array();
  for (const auto& m : s.settings()) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.projector().dim(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < m.projector().dim(); ++c) row.push_back(complex_json(m.projector()(r, c)));
      rows.push_back(std::move(row));
    }
    settings.push_back({{"label", m.label()}, {"weight", m.weight()}, {"locality", to_string(m.locality())}, {"projector", std::move(rows)}});
  }
  return j;
}

Strategy strategy_from_json(const nlohmann::json& j) {
  try {
    const auto& target_j = j.at("target");
    CVector amps(static_cast<Eigen::Index>(target_j.size()));
    for (std::size_t i = 0; i < target_j.size(); ++i) amps(static_cast<Eigen::Index>(i)) = complex_from_json(target_j[i]);
    Ket target(std::move(amps));
    std::vector<MeasurementSetting> settings;
    for (const auto& sj : j.at("settings")) {
      const auto& rows = sj.at("projector");
      const auto d = static_cast<Eigen::Index>(rows.size());
      CMatrix p(d, d);
      for (Eigen::Index r = 0; r < d; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (static_cast<Eigen::Index>(row.size()) != d) fail(ErrorCode::ParseError, "projector rows must be square");
        for (Eigen::Index c = 0; c < d; ++c) p(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
      }
      settings.emplace_back(HermitianOperator(std::move(p)), sj.at("weight").get<double>(), sj.at("label").get<std::string>(),
                            locality_from_string(sj.at("locality").get<std::string>()));
    }
    std::optional<double> theta;
    if (j.contains("theta")) theta = j["theta"].get<double>();
    return Strategy(std::move(target), std::move(settings), strategy_kind_from_string(j.at("kind").get<std::string>()), theta);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed strategy document: ") + e.what());
  }
}

}  // namespace qverify
