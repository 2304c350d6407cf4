#include "qverify/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <regex>

namespace qverify {

namespace {

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

// Qubit k lives in basis-index bit (n - 1 - k).
std::uint64_t to_index_mask(std::uint64_t bits, int n) {
  std::uint64_t r = 0;
  for (int k = 0; k < n; ++k) {
    if ((bits >> k) & 1u) r |= std::uint64_t{1} << (n - 1 - k);
  }
  return r;
}

// Exponent of i picked up by the single-qubit product (x1,z1)(x2,z2).
int phase_exponent(int x1, int z1, int x2, int z2) {
  if (x1 == 0 && z1 == 0) return 0;
  if (x1 == 1 && z1 == 1) return z2 - x2;
  if (x1 == 1 && z1 == 0) return z2 * (2 * x2 - 1);
  return x2 * (1 - 2 * z2);
}

}  // namespace

PauliString::PauliString(int n, std::uint64_t x, std::uint64_t z, int sign) : n_(n), x_(x), z_(z), sign_(sign) {
  if (n < 1 || n > 63) fail(ErrorCode::BadDim, "Pauli strings support 1..63 qubits");
  if ((x & ~low_mask(n)) || (z & ~low_mask(n))) fail(ErrorCode::InvalidArgument, "Pauli bits exceed qubit count");
  if (sign != 1 && sign != -1) fail(ErrorCode::InvalidArgument, "Pauli sign must be +1 or -1");
}

PauliString PauliString::identity(int n) { return PauliString(n, 0, 0, +1); }

PauliString PauliString::parse(const std::string& text) {
  std::size_t pos = 0;
  int sign = +1;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    sign = text[0] == '-' ? -1 : +1;
    pos = 1;
  }
  const int n = static_cast<int>(text.size() - pos);
  if (n < 1) fail(ErrorCode::ParseError, "empty Pauli string '" + text + "'");
  if (n > 63) fail(ErrorCode::ParseError, "Pauli string too long");
  std::uint64_t x = 0, z = 0;
  for (int k = 0; k < n; ++k) {
    const char c = text[pos + static_cast<std::size_t>(k)];
    const std::uint64_t bit = std::uint64_t{1} << k;
    switch (c) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Z': z |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      default: fail(ErrorCode::ParseError, std::string("invalid Pauli character '") + c + "' in '" + text + "'");
    }
  }
  return PauliString(n, x, z, sign);
}

char PauliString::letter(int qubit) const {
  const int xb = static_cast<int>((x_ >> qubit) & 1u);
  const int zb = static_cast<int>((z_ >> qubit) & 1u);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

bool PauliString::commutes_with(const PauliString& o) const {
  if (o.n_ != n_) fail(ErrorCode::BadDim, "Pauli strings of different length");
  return (std::popcount(x_ & o.z_) + std::popcount(z_ & o.x_)) % 2 == 0;
}

PauliString::PhasedProduct PauliString::times(const PauliString& o) const {
  if (o.n_ != n_) fail(ErrorCode::BadDim, "Pauli strings of different length");
  int k = 0;
  for (int q = 0; q < n_; ++q) {
    k += phase_exponent(static_cast<int>((x_ >> q) & 1u), static_cast<int>((z_ >> q) & 1u), static_cast<int>((o.x_ >> q) & 1u),
                        static_cast<int>((o.z_ >> q) & 1u));
  }
  k = ((k % 4) + 4) % 4;
  int sign = sign_ * o.sign_;
  if (k >= 2) sign = -sign;
  return {PauliString(n_, x_ ^ o.x_, z_ ^ o.z_, sign), k % 2};
}

PauliString PauliString::operator*(const PauliString& o) const {
  auto p = times(o);
  if (p.i_power != 0) fail(ErrorCode::ImaginaryPhase, "product of anticommuting Paulis " + to_string() + " and " + o.to_string());
  return p.pauli;
}

std::string PauliString::to_string() const {
  std::string s = sign_ < 0 ? "-" : "";
  for (int k = 0; k < n_; ++k) s.push_back(letter(k));
  return s;
}

CVector PauliString::apply(const CVector& v) const {
  const std::size_t d = std::size_t{1} << n_;
  if (static_cast<std::size_t>(v.size()) != d) fail(ErrorCode::BadDim, "vector size does not match Pauli string");
  const std::uint64_t xm = to_index_mask(x_, n_);
  const std::uint64_t zm = to_index_mask(z_, n_);
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx base = static_cast<double>(sign_) * kIPow[std::popcount(x_ & z_) % 4];
  CVector r(v.size());
  for (std::uint64_t b = 0; b < d; ++b) {
    const cplx f = (std::popcount(b & zm) % 2) ? -base : base;
    r(static_cast<Eigen::Index>(b ^ xm)) = f * v(static_cast<Eigen::Index>(b));
  }
  return r;
}

CMatrix PauliString::dense() const {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_);
  CMatrix m(d, d);
  for (Eigen::Index c = 0; c < d; ++c) m.col(c) = apply(CVector::Unit(d, c));
  return m;
}

HermitianOperator PauliString::positive_projector() const {
  const CMatrix p = dense();
  return HermitianOperator(0.5 * (CMatrix::Identity(p.rows(), p.cols()) + p));
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t packed(const PauliString& p) { return p.x_bits() | (p.z_bits() << 32); }

struct Pivot {
  int bit;
  PauliString row;
};

// Reduces p against the pivots; the reduced string keeps its tracked sign.
PauliString reduce(PauliString p, const std::vector<Pivot>& pivots) {
  for (const auto& pv : pivots) {
    if ((packed(p) >> pv.bit) & 1u) p = p * pv.row;
  }
  return p;
}

}  // namespace

int symplectic_rank(const std::vector<PauliString>& paulis) {
  std::vector<std::uint64_t> rows;
  for (const auto& p : paulis) {
    std::uint64_t v = packed(p);
    for (auto r : rows) v = std::min(v, v ^ r);
    if (v) {
      rows.push_back(v);
      std::sort(rows.begin(), rows.end(), std::greater<>());
    }
  }
  return static_cast<int>(rows.size());
}

StabilizerGroup group_from_generators(const std::vector<PauliString>& generators) {
  if (generators.empty()) fail(ErrorCode::InvalidArgument, "no generators");
  const int n = generators.front().num_qubits();
  if (n > kMaxQubits) fail(ErrorCode::BadDim, "stabilizer groups support at most 12 qubits");
  for (const auto& g : generators) {
    if (g.num_qubits() != n) fail(ErrorCode::BadDim, "generators have different lengths");
  }
  for (std::size_t a = 0; a < generators.size(); ++a)
    for (std::size_t b = a + 1; b < generators.size(); ++b)
      if (!generators[a].commutes_with(generators[b])) {
        fail(ErrorCode::NonCommuting, generators[a].to_string() + " and " + generators[b].to_string() + " anticommute");
      }
  std::vector<Pivot> pivots;
  for (const auto& g : generators) {
    PauliString r = reduce(g, pivots);
    if (r.is_identity_up_to_sign()) {
      if (r.sign() < 0) fail(ErrorCode::InconsistentSigns, "the generators produce -I");
      fail(ErrorCode::DependentGenerators, g.to_string() + " is a product of the other generators");
    }
    pivots.push_back({std::countr_zero(packed(r)), r});
  }
  if (static_cast<int>(generators.size()) != n) {
    fail(ErrorCode::InvalidArgument, "need exactly " + std::to_string(n) + " independent generators, got " +
                                         std::to_string(generators.size()));
  }
  StabilizerGroup group;
  group.n_ = n;
  group.generators_ = generators;
  return group;
}

StabilizerGroup group_from_strings(const std::vector<std::string>& generators) {
  std::vector<PauliString> paulis;
  paulis.reserve(generators.size());
  for (const auto& s : generators) paulis.push_back(PauliString::parse(s));
  return group_from_generators(paulis);
}

PauliString StabilizerGroup::element(std::size_t m) const {
  if (m >= order()) fail(ErrorCode::InvalidArgument, "group element index out of range");
  PauliString p = PauliString::identity(n_);
  for (int j = 0; j < n_; ++j) {
    if ((m >> j) & 1u) p = p * generators_[static_cast<std::size_t>(j)];
  }
  return p;
}

std::vector<PauliString> StabilizerGroup::elements() const {
  std::vector<PauliString> out;
  out.reserve(order());
  for (std::size_t m = 0; m < order(); ++m) out.push_back(element(m));
  return out;
}

Ket joint_eigenstate(const StabilizerGroup& g, std::uint64_t pattern) {
  const auto d = static_cast<Eigen::Index>(g.order());
  const double threshold = 0.5 / static_cast<double>(d);
  for (Eigen::Index b = 0; b < d; ++b) {
    CVector v = CVector::Unit(d, b);
    for (int j = 0; j < g.num_qubits(); ++j) {
      const double s = ((pattern >> j) & 1u) ? -1.0 : 1.0;
      v = 0.5 * (v + s * g.generators()[static_cast<std::size_t>(j)].apply(v));
    }
    if (v.squaredNorm() > threshold) {
      for (Eigen::Index i = 0; i < d; ++i) {
        if (std::abs(v(i)) > 1e-8) {
          v *= std::conj(v(i)) / std::abs(v(i));
          break;
        }
      }
      return Ket::normalized(v);
    }
  }
  fail(ErrorCode::InvariantViolation, "no joint eigenstate found for sign pattern");
}

Ket StabilizerGroup::stabilized_state() const { return joint_eigenstate(*this, 0); }

StabilizerGroup stabilizer_preset(const std::string& name) {
  static const std::regex re("(bell|ghz|cluster|zero)([0-9]*)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) fail(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
  const std::string family = m[1];
  if (family == "bell") {
    if (m[2].length() != 0) fail(ErrorCode::InvalidArgument, "bell takes no size");
    return group_from_strings({"XX", "ZZ"});
  }
  if (m[2].length() == 0) fail(ErrorCode::InvalidArgument, "preset '" + name + "' needs a qubit count");
  const int n = std::stoi(m[2]);
  if (n < 1 || n > kMaxQubits) fail(ErrorCode::BadDim, "preset size must be 1..12");
  std::vector<std::string> gens;
  auto put = [n](std::initializer_list<std::pair<int, char>> ops) {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (auto [q, c] : ops)
      if (q >= 0 && q < n) s[static_cast<std::size_t>(q)] = c;
    return s;
  };
  if (family == "zero") {
    for (int q = 0; q < n; ++q) gens.push_back(put({{q, 'Z'}}));
  } else if (family == "ghz") {
    if (n < 2) fail(ErrorCode::BadDim, "GHZ needs at least 2 qubits");
    gens.push_back(std::string(static_cast<std::size_t>(n), 'X'));
    for (int q = 0; q + 1 < n; ++q) gens.push_back(put({{q, 'Z'}, {q + 1, 'Z'}}));
  } else {
    if (n < 2) fail(ErrorCode::BadDim, "cluster state needs at least 2 qubits");
    for (int q = 0; q < n; ++q) gens.push_back(put({{q - 1, 'Z'}, {q, 'X'}, {q + 1, 'Z'}}));
  }
  return group_from_strings(gens);
}

// ---------------------------------------------------------------------------
// strategies

namespace {

MeasurementSetting pauli_setting(const PauliString& p, double weight) {
  return MeasurementSetting(p.positive_projector(), weight, p.to_string(), Locality::StabilizerPauli);
}

}  // namespace

Strategy full_stabilizer_strategy(const StabilizerGroup& g) {
  const std::size_t k = g.order() - 1;
  const double w = 1.0 / static_cast<double>(k);
  if (k * g.order() * g.order() > (std::size_t{1} << 27)) fail(ErrorCode::TooLarge, "full stabilizer strategy is too large to store densely");
  std::vector<MeasurementSetting> settings;
  settings.reserve(k);
  for (std::size_t m = 1; m < g.order(); ++m) settings.push_back(pauli_setting(g.element(m), w));
  return Strategy(g.stabilized_state(), std::move(settings), StrategyKind::StabilizerFull);
}

Strategy generator_strategy(const StabilizerGroup& g) {
  const double w = 1.0 / static_cast<double>(g.num_qubits());
  std::vector<MeasurementSetting> settings;
  for (const auto& p : g.generators()) settings.push_back(pauli_setting(p, w));
  return Strategy(g.stabilized_state(), std::move(settings), StrategyKind::StabilizerGenerators);
}

SubsetOutcome subset_strategy(const StabilizerGroup& g, const std::vector<std::size_t>& indices) {
  if (indices.empty()) fail(ErrorCode::InvalidArgument, "subset must be nonempty");
  std::vector<std::size_t> idx = indices;
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) fail(ErrorCode::InvalidArgument, "subset has repeated indices");
  std::vector<PauliString> chosen;
  for (auto i : idx) {
    if (i == 0) fail(ErrorCode::InvalidArgument, "subset may not contain the identity");
    chosen.push_back(g.element(i));
  }
  const Ket target = g.stabilized_state();
  const double w = 1.0 / static_cast<double>(chosen.size());
  if (symplectic_rank(chosen) == g.num_qubits()) {
    std::vector<MeasurementSetting> settings;
    for (const auto& p : chosen) settings.push_back(pauli_setting(p, w));
    return Strategy(target, std::move(settings), StrategyKind::Custom);
  }
  const auto d = static_cast<Eigen::Index>(g.order());
  CMatrix joint = CMatrix::Identity(d, d);
  CMatrix omega = CMatrix::Zero(d, d);
  for (const auto& p : chosen) {
    const CMatrix proj = p.positive_projector().matrix();
    joint = joint * proj;
    omega += w * proj;
  }
  const int stabilized_dim = static_cast<int>(std::lround(joint.trace().real()));
  CMatrix fooling_space = joint - target.projector();
  fooling_space = 0.5 * (fooling_space + fooling_space.adjoint()).eval();
  const Spectrum spec = eig_hermitian(HermitianOperator(fooling_space));
  const Ket& fool = spec.eigenvectors.front();
  const double acceptance = fool.amplitudes().dot(omega * fool.amplitudes()).real();
  return DegenerateSubset{fool, acceptance, stabilized_dim};
}

// ---------------------------------------------------------------------------

double ParityCheck::max_special_weight() const {
  double m = 0.0;
  for (auto k : special_columns) m = std::max(m, weights[k]);
  return m;
}

ParityCheck parity_check(const StabilizerGroup& g, std::optional<std::vector<double>> mu) {
  const int n = g.num_qubits();
  const std::size_t cols = g.order();
  std::vector<double> weights = mu.value_or(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
  if (static_cast<int>(weights.size()) != n) fail(ErrorCode::InvalidWeights, "need one weight per generator");

  ParityCheck pc;
  pc.num_qubits = n;
  pc.matrix.assign(static_cast<std::size_t>(n), std::vector<std::uint8_t>(cols, 0));
  for (int j = 0; j < n; ++j)
    for (std::size_t k = 0; k < cols; ++k) pc.matrix[static_cast<std::size_t>(j)][k] = ((k >> j) & 1u) ? 0 : 1;

  if (n <= kDenseCheckMaxQubits) {
    std::vector<Ket> basis;
    basis.reserve(cols);
    for (std::size_t k = 0; k < cols; ++k) basis.push_back(joint_eigenstate(g, k));
    for (std::size_t k = 0; k < cols; ++k) {
      for (int j = 0; j < n; ++j) {
        const auto& gen = g.generators()[static_cast<std::size_t>(j)];
        const CVector pv = 0.5 * (basis[k].amplitudes() + gen.apply(basis[k].amplitudes()));
        const double expected = pc.matrix[static_cast<std::size_t>(j)][k];
        if ((pv - expected * basis[k].amplitudes()).norm() > tol::kDerived) {
          fail(ErrorCode::InvariantViolation, "joint eigenbasis disagrees with its sign pattern");
        }
      }
      for (std::size_t l = 0; l < k; ++l) {
        if (std::abs(basis[k].overlap(basis[l])) > tol::kDerived) fail(ErrorCode::InvariantViolation, "joint eigenbasis not orthogonal");
      }
    }
    pc.dense_verified = true;
  }

  pc.weights.assign(cols, 0.0);
  for (std::size_t k = 0; k < cols; ++k) {
    int colsum = 0;
    for (int j = 0; j < n; ++j) {
      colsum += pc.matrix[static_cast<std::size_t>(j)][k];
      pc.weights[k] += weights[static_cast<std::size_t>(j)] * pc.matrix[static_cast<std::size_t>(j)][k];
    }
    if (colsum == n - 1) pc.special_columns.push_back(k);
  }
  if (static_cast<int>(pc.special_columns.size()) != n) fail(ErrorCode::InvariantViolation, "expected N columns of sum N-1");
  for (auto k : pc.special_columns) pc.special_states.push_back(joint_eigenstate(g, k));
  return pc;
}

nlohmann::json group_to_json(const StabilizerGroup& g) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& p : g.generators()) j.push_back(p.to_string());
  return j;
}

StabilizerGroup group_from_json(const nlohmann::json& j) {
  try {
    const nlohmann::json& list = j.is_object() ? j.at("generators") : j;
    return group_from_strings(list.get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("group file must be a JSON list of Pauli strings: ") + e.what());
  }
}

}  // namespace qverify
