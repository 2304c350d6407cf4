#include <doctest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "oracles.hpp"
#include "qverify/samplecount.hpp"

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

TEST_SUITE("samplecount") {

TEST_CASE("counts from a detection gap") {
  for (double gap : {1e-4, 3e-3, 0.01, 0.2 / 3, 0.5, 0.99}) {
    for (double delta : {0.5, 0.1, 1e-3, 1e-9}) {
      const auto r = sample_count_from_gap(gap, delta, "x");
      CHECK(r.n_exact == oracle::smallest_n(gap, delta));
      CHECK(std::abs(r.n_asymptotic - std::log(1 / delta) / gap) < 1e-9 * r.n_asymptotic);
    }
  }
  CHECK(sample_count_from_gap(1.0, 0.1, "x").n_exact == 1);
  CHECK(throws_code(ErrorCode::DegenerateStrategy, [] { sample_count_from_gap(0.0, 0.1, "x"); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { sample_count_from_gap(0.1, 1.0, "x"); }));
  CHECK(global_sample_count(0.01, 0.1).n_exact == 230);
  CHECK(sample_count_from_q(1.0 / 3, 0.01, 0.1, "bell").n_exact == 345);
  CHECK(throws_code(ErrorCode::DegenerateStrategy, [] { sample_count_from_q(1.0, 0.01, 0.1, "x"); }));
}

TEST_CASE("relative entropy") {
  for (double a : {0.0, 0.1, 0.5, 0.9, 1.0}) CHECK(relative_entropy(a, a == 0.0 || a == 1.0 ? 0.5 : a) >= 0.0);
  for (double a : {0.1, 0.5, 0.9}) CHECK(std::abs(relative_entropy(a, a)) < 1e-15);
  CHECK(std::abs(relative_entropy(1.0, 0.9) - 0.105360515657826301) < 1e-15);
  CHECK(std::abs(relative_entropy(0.5, 0.25) - 0.143841036225890464) < 1e-15);
  CHECK(std::abs(relative_entropy(0.0, 0.25) - std::log(4.0 / 3.0)) < 1e-15);
  CHECK(throws_code(ErrorCode::UndefinedDivergence, [] { relative_entropy(0.5, 0.0); }));
  CHECK(throws_code(ErrorCode::UndefinedDivergence, [] { relative_entropy(0.5, 1.0); }));
}

TEST_CASE("hypothesis-test counts") {
  for (double gap : {1e-3, 1e-2, 0.05}) {
    const auto cs = chernoff_stein_count({1.0, 1.0 - gap}, 0.1);
    const auto ex = sample_count_from_gap(gap, 0.1, "x");
    CHECK(std::abs(cs.n_exact - ex.n_exact) <= 1);
    CHECK(cs.method_label == "chernoff_stein_certain");
    REQUIRE(cs.n_certain_regime.has_value());
    CHECK(std::abs(*cs.n_certain_regime - std::log(10.0) / gap) < 1e-9);
  }
  const auto half = chernoff_stein_count({0.5, 0.49}, 0.1);
  CHECK(half.method_label == "chernoff_stein_gap");
  REQUIRE(half.n_gap_regime.has_value());
  CHECK(std::abs(*half.n_gap_regime - 2 * 0.25 / 1e-4 * std::log(10.0)) < 1e-6);
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { chernoff_stein_count({0.5, 0.6}, 0.1); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { chernoff_stein_count({0.5, 0.4, 0.5}, 0.1); }));
}

TEST_CASE("linear versus quadratic scaling") {
  const auto gaps = log_grid(1e-4, 1e-2, 41);
  CHECK(gaps.size() == 41);
  CHECK(std::abs(gaps.front() - 1e-4) < 1e-18);
  CHECK(std::abs(gaps.back() - 1e-2) < 1e-16);
  std::vector<double> n1, nh;
  for (double g : gaps) {
    n1.push_back(static_cast<double>(chernoff_stein_count({1.0, 1.0 - g}, 0.1).n_exact));
    nh.push_back(static_cast<double>(chernoff_stein_count({0.5, 0.5 - g}, 0.1).n_exact));
  }
  CHECK(std::abs(loglog_slope(gaps, n1) + 1.0) < 0.02);
  CHECK(std::abs(loglog_slope(gaps, nh) + 2.0) < 0.05);
  // the p < 1 count sits between the two limiting regimes' order of magnitude
  for (std::size_t i = 0; i < gaps.size(); ++i) CHECK(nh[i] > n1[i]);
}

TEST_CASE("log-log slope of exact power laws") {
  std::vector<double> x{1, 2, 4, 8, 16}, y;
  for (double v : x) y.push_back(3.0 / (v * v));
  CHECK(std::abs(loglog_slope(x, y) + 2.0) < 1e-12);
}

TEST_CASE("figure 1 table") {
  const auto grid = figure1_default_grid();
  CHECK(grid.size() == 197);
  const auto rows = figure1_data(0.01, 0.1, grid);
  CHECK(rows.size() == 200);
  double interior_max = 0, theta_at_max = 0;
  for (const auto& r : rows) {
    if (r.family == "product") CHECK(r.n_exact == 230);
    if (r.family == "bell") CHECK(r.n_exact == 345);
    if (r.family == "two_qubit") {
      const double closed = (2 + std::sin(r.theta) * std::cos(r.theta)) * 100 * std::log(10.0);
      CHECK(std::abs(r.n_asymptotic - closed) < 1e-6);
      CHECK(r.n_exact == oracle::smallest_n(0.01 * (1 - two_qubit_q(r.theta)), 0.1));
    }
    if (r.family == "two_qubit" || r.family == "two_qubit_limit") {
      if (r.n_asymptotic > interior_max) {
        interior_max = r.n_asymptotic;
        theta_at_max = r.theta;
      }
    }
  }
  CHECK(std::abs(interior_max - 575.646273248511421) < 1e-6);
  CHECK(std::abs(theta_at_max - oracle::kPi / 4) < 1e-12);
  int specials = 0;
  for (const auto& r : rows) specials += r.family == "product" || r.family == "bell";
  CHECK(specials == 3);

  std::ostringstream os;
  write_figure1_csv(rows, os);
  const std::string csv = os.str();
  CHECK(csv.rfind("theta,epsilon,n_exact,n_asymptotic,family\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 201);
}

TEST_CASE("figure 2 table") {
  const auto eps = log_grid(1e-4, 1e-1, 31);
  const auto rows = figure2_data(oracle::kPi / 8, 0.1, eps);
  REQUIRE(rows.size() == 31);
  std::vector<double> e, local, global, tomo, fid;
  for (const auto& r : rows) {
    e.push_back(r.epsilon);
    local.push_back(static_cast<double>(r.n_local));
    global.push_back(static_cast<double>(r.n_global));
    tomo.push_back(r.n_tomo_ref);
    fid.push_back(r.n_fid_ref);
    CHECK(r.n_local >= r.n_global);
    if (r.epsilon <= 0.01) {
      const double ratio = static_cast<double>(r.n_local) / static_cast<double>(r.n_global);
      const double expect = 2 + std::sin(oracle::kPi / 8) * std::cos(oracle::kPi / 8);
      CHECK(std::abs(ratio / expect - 1) < 0.01);
    }
  }
  CHECK(std::abs(loglog_slope(e, local) + 1) < 0.02);
  CHECK(std::abs(loglog_slope(e, global) + 1) < 0.02);
  CHECK(std::abs(loglog_slope(e, tomo) + 2) < 1e-9);
  CHECK(std::abs(loglog_slope(e, fid) + 2) < 1e-9);

  const auto at = figure2_data(oracle::kPi / 8, 0.1, {0.01});
  CHECK(at.front().n_global == 230);
  CHECK(std::abs(static_cast<double>(at.front().n_local) - 542) <= 1);
}

}  // TEST_SUITE
