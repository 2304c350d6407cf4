#pragma once

// Monte Carlo simulation of the sequential protocol: one randomly drawn
// setting per copy, reject on the first failure.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qverify/adversary.hpp"
#include "qverify/strategy.hpp"

namespace qverify {

// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);
// 53-bit uniform in [0, 1) from two words.
double uniform53(std::uint32_t hi, std::uint32_t lo);

enum class DeviceMode { Honest, IIDAdversary, VaryingAdversary, Custom };
std::string to_string(DeviceMode m);

// Density-matrix source indexed by copy. Adversary modes check the fidelity
// promise against the strategy target when promise_epsilon is set.
class DeviceModel {
 public:
  using Supplier = std::function<CMatrix(std::int64_t copy)>;

  static DeviceModel honest();
  static DeviceModel iid(CMatrix sigma, std::optional<double> promise_epsilon = std::nullopt);
  static DeviceModel varying(Supplier supplier, std::optional<double> promise_epsilon = std::nullopt);
  static DeviceModel custom(Supplier supplier);

  DeviceMode mode() const { return mode_; }
  bool stationary() const { return mode_ == DeviceMode::Honest || mode_ == DeviceMode::IIDAdversary; }
  std::optional<double> promise_epsilon() const { return promise_; }

  // Validated density matrix of copy i for the given target.
  AdversaryState state(std::int64_t copy, const Ket& target) const;

 private:
  DeviceMode mode_ = DeviceMode::Honest;
  std::optional<CMatrix> fixed_;
  Supplier supplier_;
  std::optional<double> promise_;
};

inline constexpr double kCertaintyClamp = 1e-10;

// Pass probabilities tr(P_j sigma_i), clamped to 0 / 1 within 1e-10. One row
// for stationary devices, otherwise one row per copy.
struct PassTable {
  std::vector<double> cumulative_weights;     // of the settings
  std::vector<std::vector<double>> pass;      // [row][setting]
  std::vector<double> copy_acceptance;        // tr(Omega sigma_i) per row

  const std::vector<double>& row(std::int64_t copy) const {
    return pass.size() == 1 ? pass.front() : pass[static_cast<std::size_t>(copy)];
  }
};

PassTable build_pass_table(const Strategy& s, const DeviceModel& device, std::int64_t n);

struct RunResult {
  std::int64_t n_copies = 0;
  bool accepted = false;
  std::optional<std::int64_t> first_failure_index;
  std::uint64_t rng_seed = 0;
  std::uint64_t trial = 0;
  std::vector<std::size_t> settings_drawn;  // only when recorded
};

RunResult run_protocol(const Strategy& s, const DeviceModel& device, std::int64_t n, std::uint64_t seed, std::uint64_t trial = 0,
                       bool record_settings = false);
RunResult run_protocol(const Strategy& s, const PassTable& table, std::int64_t n, std::uint64_t seed, std::uint64_t trial,
                       bool record_settings = false);

struct WilsonInterval {
  double lo, hi, sigma;  // sigma = half-width / z
};
inline constexpr double kWilsonZ99 = 2.5758293035489004;
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z = kWilsonZ99);

struct EnsembleStats {
  std::int64_t trials = 0;
  std::int64_t accepted = 0;
  double accept_rate = 0.0;
  WilsonInterval wilson{0, 0, 0};
};

EnsembleStats estimate_power(const Strategy& s, const DeviceModel& device, std::int64_t n, std::int64_t trials, std::uint64_t seed);
// Single-threaded reference; same counts as estimate_power for any seed.
EnsembleStats estimate_power_serial(const Strategy& s, const DeviceModel& device, std::int64_t n, std::int64_t trials,
                                    std::uint64_t seed);

// prod_i tr(Omega sigma_i)
double predicted_acceptance(const Strategy& s, const DeviceModel& device, std::int64_t n);

// One JSON object per line: trial, n, accepted, first_failure_index and,
// when recorded, setting_labels_drawn.
void write_transcript_jsonl(const Strategy& s, const std::vector<RunResult>& runs, std::ostream& os);

}  // namespace qverify
