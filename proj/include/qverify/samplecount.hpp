#pragma once

// Measurement counts: the exact (1 - Delta)^n <= delta bound, the
// Chernoff-Stein count for strategies that accept the target with p < 1, and
// the tables behind the sample-count figures.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qverify/sample_count_report.hpp"
#include "qverify/strategy.hpp"

namespace qverify {

// n_exact = ceil(ln(1/delta) / -log1p(-delta_eps)), n_asymptotic = ln(1/delta) / delta_eps.
SampleCountReport sample_count_from_gap(double delta_eps, double delta, std::string method_label);
// Same, from q: delta_eps = eps (1 - q).
SampleCountReport sample_count_from_q(double q, double epsilon, double delta, std::string method_label);
// Optimal global strategy |psi><psi| (q = 0).
SampleCountReport global_sample_count(double epsilon, double delta);

// D(a||b) in nats. a in [0, 1], b in (0, 1); the a -> 0, 1 limits are taken.
double relative_entropy(double a, double b);

struct HypothesisSpec {
  double p0;   // acceptance under the target, in (0, 1]
  double p1;   // acceptance of a bad state, in [0, 1), p1 < p0
  double chi = 0.25;  // type-I constraint, (0, 1/2)
};

// n = ceil(ln(1/delta) / D(p0||p1)), plus the gap and certain regimes.
SampleCountReport chernoff_stein_count(const HypothesisSpec& spec, double delta);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// --- figure tables -------------------------------------------------------

struct Figure1Row {
  double theta;
  double epsilon;
  std::int64_t n_exact;
  double n_asymptotic;
  std::string family;  // product, bell, two_qubit, two_qubit_limit
};

// Default grid: 197 evenly spaced angles on [0, pi/2] (contains 0, pi/4 and
// pi/2). Each special angle yields two rows: the special family and the
// limit of the four-setting family.
std::vector<double> figure1_default_grid();
std::vector<Figure1Row> figure1_data(double epsilon, double delta, const std::vector<double>& thetas);
void write_figure1_csv(const std::vector<Figure1Row>& rows, std::ostream& os);

struct Figure2Row {
  double epsilon;
  std::int64_t n_local;
  std::int64_t n_global;
  double n_tomo_ref;
  double n_fid_ref;
};

struct ReferenceConstants {
  double tomography = 1.0;
  double fidelity = 1.0;
};

inline constexpr const char* kReferenceCurveLabel = "illustrative scaling only";

// Log-spaced epsilon grid, endpoints included.
std::vector<double> log_grid(double lo, double hi, int points);
std::vector<Figure2Row> figure2_data(double theta, double delta, const std::vector<double>& epsilons,
                                     const ReferenceConstants& refs = {});
void write_figure2_csv(const std::vector<Figure2Row>& rows, std::ostream& os);

}  // namespace qverify
