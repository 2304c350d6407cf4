#include "qverify/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

namespace qverify {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double uniform53(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 21) ^ (lo >> 11);
  return static_cast<double>(bits & ((std::uint64_t{1} << 53) - 1)) * 0x1.0p-53;
}

std::string to_string(DeviceMode m) {
  switch (m) {
    case DeviceMode::Honest: return "honest";
    case DeviceMode::IIDAdversary: return "iid";
    case DeviceMode::VaryingAdversary: return "varying";
    case DeviceMode::Custom: return "custom";
  }
  return "?";
}

DeviceModel DeviceModel::honest() { return DeviceModel{}; }

DeviceModel DeviceModel::iid(CMatrix sigma, std::optional<double> promise_epsilon) {
  DeviceModel d;
  d.mode_ = DeviceMode::IIDAdversary;
  d.fixed_ = std::move(sigma);
  d.promise_ = promise_epsilon;
  return d;
}

DeviceModel DeviceModel::varying(Supplier supplier, std::optional<double> promise_epsilon) {
  if (!supplier) fail(ErrorCode::InvalidArgument, "varying device needs a state supplier");
  DeviceModel d;
  d.mode_ = DeviceMode::VaryingAdversary;
  d.supplier_ = std::move(supplier);
  d.promise_ = promise_epsilon;
  return d;
}

DeviceModel DeviceModel::custom(Supplier supplier) {
  if (!supplier) fail(ErrorCode::InvalidArgument, "custom device needs a state supplier");
  DeviceModel d;
  d.mode_ = DeviceMode::Custom;
  d.supplier_ = std::move(supplier);
  return d;
}

AdversaryState DeviceModel::state(std::int64_t copy, const Ket& target) const {
  switch (mode_) {
    case DeviceMode::Honest: return pure_adversary_state(target, target, AdversaryKind::Custom);
    case DeviceMode::IIDAdversary: return make_adversary_state(*fixed_, target, AdversaryKind::Custom, promise_);
    case DeviceMode::VaryingAdversary: return make_adversary_state(supplier_(copy), target, AdversaryKind::Custom, promise_);
    case DeviceMode::Custom: return make_adversary_state(supplier_(copy), target, AdversaryKind::Custom);
  }
  fail(ErrorCode::InvalidArgument, "unknown device mode");
}

namespace {

double clamp_certainty(double p) {
  if (p <= kCertaintyClamp) return 0.0;
  if (p >= 1.0 - kCertaintyClamp) return 1.0;
  return p;
}

void check_run_args(std::int64_t n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "need at least one copy");
  if (n > (std::int64_t{1} << 32)) fail(ErrorCode::TooLarge, "at most 2^32 copies per run");
}

}  // namespace

PassTable build_pass_table(const Strategy& s, const DeviceModel& device, std::int64_t n) {
  check_run_args(n);
  PassTable t;
  double acc = 0.0;
  for (const auto& m : s.settings()) {
    acc += m.weight();
    t.cumulative_weights.push_back(acc);
  }
  t.cumulative_weights.back() = 1.0;
  const std::int64_t rows = device.stationary() ? 1 : n;
  t.pass.reserve(static_cast<std::size_t>(rows));
  for (std::int64_t i = 0; i < rows; ++i) {
    const AdversaryState st = device.state(i, s.target());
    std::vector<double> row;
    row.reserve(s.settings().size());
    for (const auto& m : s.settings()) row.push_back(clamp_certainty(m.projector().expectation(st.sigma)));
    t.copy_acceptance.push_back(clamp_certainty(s.omega().expectation(st.sigma)));
    t.pass.push_back(std::move(row));
  }
  return t;
}

RunResult run_protocol(const Strategy& s, const PassTable& table, std::int64_t n, std::uint64_t seed, std::uint64_t trial,
                       bool record_settings) {
  check_run_args(n);
  if (table.pass.size() != 1 && static_cast<std::int64_t>(table.pass.size()) < n) {
    fail(ErrorCode::InvalidArgument, "pass table shorter than the run");
  }
  if (table.cumulative_weights.size() != s.settings().size()) fail(ErrorCode::InvalidArgument, "pass table does not match strategy");
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  RunResult r;
  r.n_copies = n;
  r.rng_seed = seed;
  r.trial = trial;
  r.accepted = true;
  const auto& cw = table.cumulative_weights;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto w = philox4x32({static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                               static_cast<std::uint32_t>(i), 0u},
                              key);
    const double u_setting = uniform53(w[0], w[1]);
    const double u_pass = uniform53(w[2], w[3]);
    const auto j = static_cast<std::size_t>(std::upper_bound(cw.begin(), cw.end(), u_setting) - cw.begin());
    const std::size_t setting = std::min(j, cw.size() - 1);
    if (record_settings) r.settings_drawn.push_back(setting);
    if (!(u_pass < table.row(i)[setting])) {
      r.accepted = false;
      r.first_failure_index = i;
      break;
    }
  }
  return r;
}

RunResult run_protocol(const Strategy& s, const DeviceModel& device, std::int64_t n, std::uint64_t seed, std::uint64_t trial,
                       bool record_settings) {
  return run_protocol(s, build_pass_table(s, device, n), n, seed, trial, record_settings);
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials < 1 || successes < 0 || successes > trials) fail(ErrorCode::InvalidArgument, "bad Wilson interval counts");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half), half / z};
}

namespace {

EnsembleStats run_ensemble(const Strategy& s, const DeviceModel& device, std::int64_t n, std::int64_t trials, std::uint64_t seed,
                           bool parallel) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "need at least one trial");
  const PassTable table = build_pass_table(s, device, n);
  std::int64_t accepted = 0;
#pragma omp parallel for schedule(static) reduction(+ : accepted) if (parallel)
  for (std::int64_t t = 0; t < trials; ++t) {
    if (run_protocol(s, table, n, seed, static_cast<std::uint64_t>(t)).accepted) ++accepted;
  }
  EnsembleStats e;
  e.trials = trials;
  e.accepted = accepted;
  e.accept_rate = static_cast<double>(accepted) / static_cast<double>(trials);
  e.wilson = wilson_interval(accepted, trials);
  return e;
}

}  // namespace

EnsembleStats estimate_power(const Strategy& s, const DeviceModel& device, std::int64_t n, std::int64_t trials, std::uint64_t seed) {
  return run_ensemble(s, device, n, trials, seed, true);
}

EnsembleStats estimate_power_serial(const Strategy& s, const DeviceModel& device, std::int64_t n, std::int64_t trials,
                                    std::uint64_t seed) {
  return run_ensemble(s, device, n, trials, seed, false);
}

double predicted_acceptance(const Strategy& s, const DeviceModel& device, std::int64_t n) {
  const PassTable t = build_pass_table(s, device, n);
  if (t.copy_acceptance.size() == 1) return std::pow(t.copy_acceptance.front(), static_cast<double>(n));
  double p = 1.0;
  for (double a : t.copy_acceptance) p *= a;
  return p;
}

void write_transcript_jsonl(const Strategy& s, const std::vector<RunResult>& runs, std::ostream& os) {
  for (const auto& r : runs) {
    nlohmann::ordered_json j;
    j["trial"] = r.trial;
    j["n"] = r.n_copies;
    j["accepted"] = r.accepted;
    j["first_failure_index"] = r.first_failure_index ? nlohmann::ordered_json(*r.first_failure_index) : nlohmann::ordered_json(nullptr);
    if (!r.settings_drawn.empty()) {
      auto labels = nlohmann::ordered_json::array();
      for (auto k : r.settings_drawn) labels.push_back(s.settings()[k].label());
      j["setting_labels_drawn"] = std::move(labels);
    }
    os << j.dump() << '\n';
  }
}

}  // namespace qverify
