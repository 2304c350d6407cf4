// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <variant>

#include <fmt/core.h>

#include "oracles.hpp"
#include "qverify/adversary.hpp"
#include "qverify/protocol.hpp"
#include "qverify/samplecount.hpp"
#include "qverify/stabilizer.hpp"

using namespace qverify;
using oracle::kPi;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

Outcome bell_optimum() {
  Outcome o;
  const Strategy s = bell_strategy();
  const double q = metrics(s).q;
  o.require(std::abs(q - 1.0 / 3) < 1e-12, fmt::format("q = {:.17g}", q));
  o.require(std::abs(metrics(s).delta_eps(0.01) - 0.02 / 3) < 1e-12, "delta_eps != 2 eps / 3");
  const auto t0 = Clock::now();
  const auto r = exact_sample_count(s, 0.01, 0.1);
  const double count_ms = ms_since(t0);
  o.require(r.n_exact == oracle::smallest_n(0.02 / 3, 0.1) && r.n_exact == 345, fmt::format("n_exact = {}", r.n_exact));
  // timed without the eigensolve of metrics, which the count also performs
  const auto t1 = Clock::now();
  const auto rr = sample_count_from_q(q, 0.01, 0.1, "bell");
  const double formula_ms = ms_since(t1);
  o.require(rr.n_exact == 345 && formula_ms < 1.0, fmt::format("formula took {:.3f} ms", formula_ms));
  o.detail = o.ok ? fmt::format("q = {:.15f}, n_exact = {} ({:.3f} ms incl. eigensolve)", q, r.n_exact, count_ms) : o.detail;
  return o;
}

Outcome closed_form_strategy() {
  Outcome o;
  double worst_omega = 0, worst_q = 0, worst_dec = 0;
  for (int i = 0; i < 200; ++i) {
    const double theta = (i + 0.5) * (kPi / 2) / 200;
    const Strategy s = two_qubit_optimal(theta);
    worst_omega = std::max(worst_omega, (s.omega().matrix() - oracle::optimal_two_qubit_matrix(theta)).cwiseAbs().maxCoeff());
    const double sn = std::sin(2 * theta);
    worst_q = std::max(worst_q, std::abs(metrics(s).q - (2 + sn) / (4 + sn)));
    CMatrix dec = CMatrix::Zero(4, 4);
    for (int k = 1; k <= 3; ++k) dec += (CMatrix::Identity(4, 4) - two_qubit_phi(theta, k).projector()) / 3.0;
    CMatrix printed = CMatrix::Zero(4, 4);
    for (int k = 1; k <= 3; ++k) {
      const CVector p = oracle::phi_k(theta, k);
      printed += (CMatrix::Identity(4, 4) - p * p.adjoint()) / 3.0;
    }
    worst_dec = std::max({worst_dec, (dec - oracle::omega3_matrix(theta)).cwiseAbs().maxCoeff(),
                          (printed - oracle::omega3_matrix(theta)).cwiseAbs().maxCoeff()});
  }
  o.require(worst_omega < 1e-10, fmt::format("operator deviation {:.3g}", worst_omega));
  o.require(worst_q < 1e-10, fmt::format("q deviation {:.3g}", worst_q));
  o.require(worst_dec < 1e-10, fmt::format("three-setting decomposition deviation {:.3g}", worst_dec));
  if (o.ok) o.detail = fmt::format("200 angles, max deviations {:.2g} / {:.2g} / {:.2g}", worst_omega, worst_q, worst_dec);
  return o;
}

// Minimum over (alpha, phi) of the worst orthogonal acceptance of the
// explicit family operator, by nested golden-section searches.
struct OracleMin {
  double alpha, p, q;
};

OracleMin brute_force_family_min(double theta) {
  const Eigen::VectorXcd psi = oracle::ket2(theta);
  auto q_at = [&](double a, double phi) { return oracle::q_of(oracle::family_matrix(theta, a, phi), psi); };
  auto best_alpha = [&](double phi) { return oracle::golden_min([&](double a) { return q_at(a, phi); }, 0.0, 1.0, 1e-13); };
  const int scan = 400;
  const double h = (kPi / 2) / scan;
  int best = 0;
  double best_q = 2;
  for (int i = 0; i < scan; ++i) {
    const double v = best_alpha((i + 0.5) * h).second;
    if (v < best_q) {
      best_q = v;
      best = i;
    }
  }
  const auto [phi, qmin] = oracle::golden_min([&](double phi) { return best_alpha(phi).second; },
                                              std::max(1e-9, (best - 0.5) * h), (best + 1.5) * h, 1e-12);
  return {best_alpha(phi).first, std::pow(std::tan(phi), 2), qmin};
}

Outcome landscape_certification() {
  Outcome o;
  std::string summary;
  for (double theta : {kPi / 12, kPi / 8, kPi / 5, 3 * kPi / 8}) {
    const auto r = landscape(theta);
    const OracleMin b = brute_force_family_min(theta);
    const double t = std::tan(theta);
    const double sn = std::sin(2 * theta);
    const double q_opt = (2 + sn) / (4 + sn), a_opt = (2 - sn) / (4 + sn);
    const std::string tag = fmt::format("theta={:.4f}", theta);
    o.require(std::abs(r.alpha_min - a_opt) < 1e-4, tag + fmt::format(" alpha {:.8f}", r.alpha_min));
    o.require(std::abs(r.p_min - t) < 1e-4, tag + fmt::format(" P {:.8f}", r.p_min));
    o.require(std::abs(r.q_min - q_opt) < 1e-6, tag + fmt::format(" q {:.10f}", r.q_min));
    o.require(std::abs(b.alpha - a_opt) < 1e-4 && std::abs(b.p - t) < 1e-4 && std::abs(b.q - q_opt) < 1e-6,
              tag + " brute-force oracle disagrees with the closed form");
    o.require(std::abs(r.q_min - b.q) < 1e-6, tag + " search and brute force disagree");
    summary += fmt::format("{}{:.3f}:dq={:.1e}", summary.empty() ? "" : " ", theta, std::abs(r.q_min - q_opt));
  }
  if (o.ok) o.detail = summary;
  return o;
}

Outcome ppt_boundary() {
  Outcome o;
  double worst = 0, worst_found = 0;
  for (double theta : {kPi / 12, kPi / 8, kPi / 5, 3 * kPi / 8}) {
    const double sn = std::sin(2 * theta);
    const double lb = sn / (1 + sn);
    const double phi_opt = std::atan(std::sqrt(std::tan(theta)));
    worst = std::max({worst, std::abs(trace3_lambda1(theta, phi_opt) - lb), std::abs(ppt_lower_bound(theta) - lb)});
    worst_found = std::max(worst_found, std::abs(trace3_lambda1(theta, landscape(theta).phi_min) - lb));
  }
  o.require(worst < 1e-10, fmt::format("deviation at the optimum {:.3g}", worst));
  o.require(worst_found < 1e-6, fmt::format("deviation at the located optimum {:.3g}", worst_found));
  if (o.ok) o.detail = fmt::format("max |lambda1 - lambda_LB| = {:.2g} (located optimum {:.2g})", worst, worst_found);
  return o;
}

Outcome stabilizer_laws() {
  Outcome o;
  double avg_residual = 0, dfull = 0, dgen = 0, fool = 1;
  for (const char* name : {"bell", "ghz3", "ghz4", "cluster4"}) {
    const auto g = stabilizer_preset(name);
    const int n = g.num_qubits();
    const std::size_t d = std::size_t{1} << n;
    CMatrix sum = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const auto& m : g.elements()) sum += m.dense();
    avg_residual = std::max(avg_residual, (sum / static_cast<double>(d) - g.stabilized_state().projector()).cwiseAbs().maxCoeff());
    const double q_full = 1 - std::ldexp(1.0, n - 1) / (std::ldexp(1.0, n) - 1);
    const Strategy full = full_stabilizer_strategy(g);
    dfull = std::max(dfull, std::abs(metrics(full).q - q_full));
    dfull = std::max(dfull, std::abs(oracle::q_of(full.omega().matrix(), full.target().amplitudes()) - q_full));
    const Strategy gen = generator_strategy(g);
    dgen = std::max(dgen, std::abs(metrics(gen).q - (1 - 1.0 / n)));
    for (int drop = 0; drop < n; ++drop) {
      std::vector<std::size_t> idx;
      for (int j = 0; j < n; ++j)
        if (j != drop) idx.push_back(std::size_t{1} << j);
      const auto out = subset_strategy(g, idx);
      if (!std::holds_alternative<DegenerateSubset>(out)) {
        o.require(false, fmt::format("{} without generator {} was not degenerate", name, drop));
        continue;
      }
      const auto& ds = std::get<DegenerateSubset>(out);
      // acceptance recomputed from the subset projectors directly
      CMatrix om = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (auto k : idx) om += g.element(k).positive_projector().matrix() / static_cast<double>(idx.size());
      const CVector& f = ds.fooling_state.amplitudes();
      fool = std::min({fool, ds.acceptance, f.dot(om * f).real()});
      o.require(std::abs(ds.fooling_state.overlap(g.stabilized_state())) < 1e-10, "fooling state not orthogonal");
    }
  }
  o.require(avg_residual <= 1e-10, fmt::format("group average residual {:.3g}", avg_residual));
  o.require(dfull < 1e-10, fmt::format("full strategy q deviation {:.3g}", dfull));
  o.require(dgen < 1e-10, fmt::format("generator strategy q deviation {:.3g}", dgen));
  o.require(fool >= 1 - 1e-10, fmt::format("fooling acceptance {:.17g}", fool));
  if (o.ok) o.detail = fmt::format("residual {:.2g}, dq full {:.2g}, dq gen {:.2g}, min fooling acceptance {:.15f}", avg_residual, dfull, dgen, fool);
  return o;
}

Outcome adversary_oracles() {
  Outcome o;
  const std::vector<Strategy> strategies{bell_strategy(), two_qubit_optimal(kPi / 8), two_qubit_optimal(1.3),
                                         product_state_strategy(ProductTarget::Zero),
                                         full_stabilizer_strategy(stabilizer_preset("ghz3")),
                                         generator_strategy(stabilizer_preset("cluster4"))};
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0, 1);
  double excess = -1, deps = 0, dval = 0;
  std::uint64_t seed = 0;
  for (const Strategy& s : strategies) {
    const double q = metrics(s).q;
    for (double eps : {0.01, 0.1}) {
      const double pure = s.omega().expectation(worst_case_state(s, eps).sigma);
      for (int i = 0; i < 1000; ++i) {
        const auto st = random_mixed_state(s.target(), (1 - eps) * u(gen), ++seed);
        excess = std::max(excess, s.omega().expectation(st.sigma) - pure);
      }
      const auto gv = game_value(s.omega(), s.target(), eps);
      deps = std::max(deps, std::abs(gv.eps_bar - eps));
      dval = std::max(dval, std::abs(gv.accept_prob - (1 - eps * (1 - q))));
    }
  }
  o.require(excess <= 1e-10, fmt::format("a mixed state beats the pure worst case by {:.3g}", excess));
  o.require(deps < 1e-5, fmt::format("maximizing eps_bar off by {:.3g}", deps));
  o.require(dval < 1e-8, fmt::format("game value off by {:.3g}", dval));
  if (o.ok) o.detail = fmt::format("max mixed excess {:.2g}, |eps_bar - eps| {:.2g}, |value - closed form| {:.2g}", excess, deps, dval);
  return o;
}

Outcome protocol_statistics() {
  Outcome o;
  const Strategy s = bell_strategy();
  std::string summary;
  for (auto [eps, n] : {std::pair{0.1, 100}, std::pair{0.05, 300}}) {
    const auto dev = DeviceModel::iid(worst_case_state(s, eps).sigma.matrix(), eps);
    const double predicted = std::pow(1 - 2 * eps / 3, n);
    const auto e = estimate_power(s, dev, n, 100000, 7);
    const double z = std::abs(e.accept_rate - predicted) / e.wilson.sigma;
    o.require(z <= 3, fmt::format("eps={} n={}: rate {} vs {} ({:.2f} sigma)", eps, n, e.accept_rate, predicted, z));
    // pooled over 20 further seeds: a systematic bias would show here
    std::int64_t accepted = 0;
    for (std::uint64_t seed = 2025; seed < 2045; ++seed) accepted += estimate_power(s, dev, n, 100000, seed).accepted;
    const auto pooled = wilson_interval(accepted, 2000000);
    const double zp = std::abs(static_cast<double>(accepted) / 2e6 - predicted) / pooled.sigma;
    o.require(zp <= 3, fmt::format("eps={} n={}: pooled {} of 2e6 vs {} ({:.2f} sigma)", eps, n, accepted, predicted, zp));
    summary += fmt::format("eps={} n={}: {:.5f} vs {:.5f} ({:.2f} sigma, pooled {:.2f}); ", eps, n, e.accept_rate, predicted, z, zp);
  }
  const auto honest = run_protocol(s, DeviceModel::honest(), 1000000, 1);
  o.require(honest.accepted, "honest device rejected");
  if (o.ok) o.detail = summary + "honest 1e6 copies accepted";
  return o;
}

Outcome scaling_separation() {
  Outcome o;
  const auto gaps = log_grid(1e-4, 1e-2, 41);
  std::vector<double> n1, nh;
  for (double g : gaps) {
    n1.push_back(static_cast<double>(chernoff_stein_count({1.0, 1.0 - g}, 0.1).n_exact));
    nh.push_back(static_cast<double>(chernoff_stein_count({0.5, 0.5 - g}, 0.1).n_exact));
  }
  const double s1 = loglog_slope(gaps, n1), sh = loglog_slope(gaps, nh);
  o.require(std::abs(s1 + 1) <= 0.02, fmt::format("p0=1 slope {:.4f}", s1));
  o.require(std::abs(sh + 2) <= 0.05, fmt::format("p0=0.5 slope {:.4f}", sh));
  if (o.ok) o.detail = fmt::format("slopes {:.4f} (p0=1), {:.4f} (p0=0.5)", s1, sh);
  return o;
}

Outcome figure_reproduction() {
  Outcome o;
  const auto rows = figure1_data(0.01, 0.1, figure1_default_grid());
  std::int64_t at0 = -1, at_half_pi = -1, at_bell = -1;
  double limit_max = 0, limit_theta = 0;
  for (const auto& r : rows) {
    if (r.family == "product" && r.theta == 0.0) at0 = r.n_exact;
    if (r.family == "product" && r.theta > 1) at_half_pi = r.n_exact;
    if (r.family == "bell") at_bell = r.n_exact;
    if ((r.family == "two_qubit" || r.family == "two_qubit_limit") && r.n_asymptotic > limit_max) {
      limit_max = r.n_asymptotic;
      limit_theta = r.theta;
    }
  }
  const std::int64_t expect_end = oracle::smallest_n(0.01, 0.1), expect_bell = oracle::smallest_n(0.02 / 3, 0.1);
  o.require(at0 == expect_end && at0 == 230, fmt::format("theta=0 count {}", at0));
  o.require(at_half_pi == expect_end, fmt::format("theta=pi/2 count {}", at_half_pi));
  o.require(at_bell == expect_bell && at_bell == 345, fmt::format("Bell count {}", at_bell));
  o.require(std::abs(limit_max - 2.5 * 100 * std::log(10.0)) < 1e-6 && std::abs(limit_theta - kPi / 4) < 1e-12,
            fmt::format("interior maximum {} at {}", limit_max, limit_theta));
  // discontinuities: the nearest interior point sits far above each special value
  for (double special : {0.0, kPi / 4, kPi / 2}) {
    std::int64_t special_n = -1, near_n = -1;
    double near_gap = 1;
    for (const auto& r : rows) {
      if (std::abs(r.theta - special) < 1e-12 && (r.family == "product" || r.family == "bell")) special_n = r.n_exact;
      if (r.family == "two_qubit" && std::abs(r.theta - special) < near_gap) {
        near_gap = std::abs(r.theta - special);
        near_n = r.n_exact;
      }
    }
    o.require(special_n > 0 && near_n - special_n > 100, fmt::format("no jump at theta={:.4f}", special));
  }

  const auto eps = log_grid(1e-4, 1e-1, 31);
  const auto f2 = figure2_data(kPi / 8, 0.1, eps);
  std::vector<double> e, lo, gl, tomo, fid;
  for (const auto& r : f2) {
    e.push_back(r.epsilon);
    lo.push_back(static_cast<double>(r.n_local));
    gl.push_back(static_cast<double>(r.n_global));
    tomo.push_back(r.n_tomo_ref);
    fid.push_back(r.n_fid_ref);
  }
  const double sl = loglog_slope(e, lo), sg = loglog_slope(e, gl), st = loglog_slope(e, tomo), sf = loglog_slope(e, fid);
  o.require(std::abs(sl + 1) < 0.02 && std::abs(sg + 1) < 0.02, fmt::format("local/global slopes {:.4f} {:.4f}", sl, sg));
  o.require(std::abs(st + 2) < 0.02 && std::abs(sf + 2) < 0.02, fmt::format("reference slopes {:.4f} {:.4f}", st, sf));
  if (o.ok)
    o.detail = fmt::format("ends {}/{}, Bell {}, max {:.3f}; slopes {:.3f} {:.3f} {:.3f} {:.3f}", at0, at_half_pi, at_bell,
                           limit_max, sl, sg, st, sf);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_ms;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion all[] = {
      {1, "bell optimum", 1000, bell_optimum},
      {2, "closed-form two-qubit strategy", 1000, closed_form_strategy},
      {3, "landscape certification", 30000, landscape_certification},
      {4, "separability boundary", 5000, ppt_boundary},
      {5, "stabilizer laws", 10000, stabilizer_laws},
      {6, "adversary oracles", 60000, adversary_oracles},
      {7, "protocol statistics", 60000, protocol_statistics},
      {8, "scaling separation", 1000, scaling_separation},
      {9, "figure reproduction", 5000, figure_reproduction},
  };
  int failures = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms = ms_since(t0);
    if (ms > c.budget_ms) o.require(false, fmt::format("over the {:.0f} ms budget", c.budget_ms));
    failures += !o.ok;
    fmt::print("criterion {} {} {} [{:.0f} ms] {}\n", c.id, o.ok ? "PASS" : "FAIL", c.name, ms, o.detail);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
