#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qverify {

struct SampleCountReport {
  std::optional<double> epsilon;  // absent for pure hypothesis-test reports
  double delta = 0.0;
  std::optional<double> q;
  double delta_eps = 0.0;
  std::int64_t n_exact = 0;
  double n_asymptotic = 0.0;
  std::string method_label;
  // Chernoff-Stein limiting regimes, when computed.
  std::optional<double> p0;
  std::optional<double> n_gap_regime;      // 2 p (1 - p) / Delta^2 * ln(1/delta)
  std::optional<double> n_certain_regime;  // ln(1/delta) / Delta
};

}  // namespace qverify
