// qverify: command-line front end for the verification library.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "json_config.hpp"
#include "output.hpp"
#include "qverify/adversary.hpp"
#include "qverify/csv.hpp"
#include "qverify/protocol.hpp"
#include "qverify/samplecount.hpp"
#include "qverify/stabilizer.hpp"
#include "qverify/strategy.hpp"
#include "qverify/util.hpp"

namespace qverify::cli {
namespace {

void strict_check(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvariantViolation, what);
}

ojson complex_list(const CVector& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, "'" + path + "' is not valid JSON: " + e.what());
  }
}

// --- group and strategy selection ------------------------------------------

struct GroupSource {
  std::string preset, generators, file;

  void add(CLI::App* app) {
    app->add_option("--preset", preset, "Stabilizer preset: bell, ghz<N>, cluster<N>, zero<N>");
    app->add_option("--generators", generators, "Comma-separated generator strings, e.g. XX,ZZ");
    app->add_option("--group-file", file, "JSON list of generator strings");
  }
  bool given() const { return !preset.empty() || !generators.empty() || !file.empty(); }
  StabilizerGroup build() const {
    const int n = !preset.empty() + !generators.empty() + !file.empty();
    if (n != 1) fail(ErrorCode::InvalidArgument, "give exactly one of --preset, --generators, --group-file");
    if (!preset.empty()) return stabilizer_preset(preset);
    if (!generators.empty()) return group_from_strings(split_list(generators));
    return group_from_json(read_json_file(file));
  }
};

struct StrategySource {
  bool bell = false, two_qubit = false, stab_full = false, stab_gen = false;
  std::string theta = "pi/8", product, file;
  GroupSource group;

  void add(CLI::App* app) {
    app->add_flag("--bell", bell, "Bell strategy {XX, -YY, ZZ}");
    app->add_flag("--two-qubit", two_qubit, "Optimal four-setting strategy for sin(t)|00> + cos(t)|11>");
    app->add_option("--theta", theta, "Target angle for --two-qubit (radians, pi/8 style accepted)");
    app->add_option("--product", product, "Product target: zero (|00>) or one (|11>)")->check(CLI::IsMember({"zero", "one"}));
    app->add_flag("--stabilizer-full", stab_full, "All non-identity stabilizers");
    app->add_flag("--stabilizer-generators", stab_gen, "Stabilizer generators only");
    app->add_option("--strategy-file", file, "Strategy JSON document");
    group.add(app);
  }

  Strategy build() const {
    const int n = bell + two_qubit + !product.empty() + stab_full + stab_gen + !file.empty();
    if (n != 1) {
      fail(ErrorCode::InvalidArgument,
           "choose exactly one of --bell, --two-qubit, --product, --stabilizer-full, --stabilizer-generators, --strategy-file");
    }
    if (bell) return bell_strategy();
    if (two_qubit) return two_qubit_optimal(parse_angle(theta));
    if (!product.empty()) return product_state_strategy(product == "zero" ? ProductTarget::Zero : ProductTarget::One);
    if (!file.empty()) {
      // either a bare strategy or a document written by `--format json strategy`
      const nlohmann::json j = read_json_file(file);
      return strategy_from_json(j.contains("strategy") && !j.contains("settings") ? j.at("strategy") : j);
    }
    const StabilizerGroup g = group.build();
    return stab_full ? full_stabilizer_strategy(g) : generator_strategy(g);
  }
};

void check_strategy_strict(const Strategy& s, const StrategyMetrics& m) {
  const CVector& psi = s.target().amplitudes();
  strict_check((s.omega().matrix() * psi - psi).norm() <= tol::kDerived, "strategy does not fix its target");
  const auto d = psi.size();
  const CMatrix pi_perp = CMatrix::Identity(d, d) - psi * psi.adjoint();
  CMatrix block = pi_perp * s.omega().matrix() * pi_perp;
  block = 0.5 * (block + block.adjoint()).eval();
  const double top = eigenvalues_hermitian(block).front();
  strict_check(std::abs(std::max(top, 0.0) - m.q) <= tol::kDerived, "q disagrees with the projected spectrum");
}

void check_count_strict(const SampleCountReport& r) {
  const double n = static_cast<double>(r.n_exact);
  strict_check(n * -std::log1p(-r.delta_eps) >= -std::log(r.delta) * (1 - 1e-12), "n_exact is too small");
  strict_check(r.n_exact == 1 || (n - 1) * -std::log1p(-r.delta_eps) < -std::log(r.delta) * (1 + 1e-12), "n_exact is not minimal");
}

ojson metrics_json(const Strategy& s, const StrategyMetrics& m) {
  ojson j;
  j["kind"] = to_string(s.kind());
  j["q"] = m.q;
  j["trace"] = m.trace;
  j["settings"] = s.settings().size();
  j["second_eigenvalue_gap"] = m.second_eigenvalue_gap;
  j["degenerate"] = m.degenerate;
  return j;
}

// --- commands --------------------------------------------------------------

struct StrategyCmd {
  StrategySource src;
  void run(const Globals& g, Output& out) const {
    const Strategy s = src.build();
    const StrategyMetrics m = metrics(s);
    if (g.strict()) check_strategy_strict(s, m);
    if (g.json()) {
      ojson data;
      data["strategy"] = ojson::parse(to_json(s).dump());
      data["metrics"] = metrics_json(s, m);
      out.json(data);
    } else {
      out.record(metrics_json(s, m));
    }
  }
};

struct SampleCountCmd {
  StrategySource src;
  double epsilon = 0.01, delta = 0.1;
  void run(const Globals& g, Output& out) const {
    const Strategy s = src.build();
    const StrategyMetrics m = metrics(s);
    const SampleCountReport r = exact_sample_count(s, epsilon, delta);
    const SampleCountReport cs = chernoff_stein_count({1.0, 1.0 - r.delta_eps}, delta);
    if (g.strict()) {
      check_strategy_strict(s, m);
      check_count_strict(r);
    }
    ojson f;
    f["kind"] = to_string(s.kind());
    f["epsilon"] = epsilon;
    f["delta"] = delta;
    f["q"] = *r.q;
    f["delta_eps"] = r.delta_eps;
    f["n_exact"] = r.n_exact;
    f["n_asymptotic"] = r.n_asymptotic;
    f["n_chernoff_stein"] = cs.n_exact;
    f["regime"] = "p=1: n linear in 1/delta_eps";
    out.record(f);
  }
};

struct FigureCmd {
  std::string which;
  double epsilon = 0.01, delta = 0.1;
  std::string theta = "pi/8";
  int theta_points = 0;
  double eps_min = 1e-4, eps_max = 1e-2;
  int eps_points = 41;
  double c_tomo = 1.0, c_fid = 1.0;
  int locus_points = 101;
  LandscapeOptions grid;

  void run(const Globals& g, Output& out) const {
    if (which == "fig1") return fig1(g, out);
    if (which == "fig2") return fig2(g, out);
    if (which == "figS1") return figS1(g, out);
    return figS2(g, out);
  }

  void fig1(const Globals& g, Output& out) const {
    std::vector<double> thetas = figure1_default_grid();
    if (theta_points > 0) {
      thetas.clear();
      if (theta_points < 2) fail(ErrorCode::InvalidArgument, "need at least 2 angles");
      for (int i = 0; i < theta_points; ++i) thetas.push_back((std::numbers::pi / 2) * i / (theta_points - 1));
    }
    const auto rows = figure1_data(epsilon, delta, thetas);
    if (g.strict()) {
      for (const auto& r : rows) {
        SampleCountReport rep;
        rep.delta = delta;
        rep.delta_eps = -std::log(delta) / r.n_asymptotic;
        rep.n_exact = r.n_exact;
        check_count_strict(rep);
      }
    }
    if (g.json()) {
      ojson a = ojson::array();
      for (const auto& r : rows) a.push_back({{"theta", r.theta}, {"epsilon", r.epsilon}, {"n_exact", r.n_exact},
                                              {"n_asymptotic", r.n_asymptotic}, {"family", r.family}});
      out.json({{"rows", a}});
    } else {
      out.csv([&](std::ostream& os) { write_figure1_csv(rows, os); });
    }
  }

  void fig2(const Globals& g, Output& out) const {
    const double th = parse_angle(theta);
    const auto rows = figure2_data(th, delta, log_grid(eps_min, eps_max, eps_points), {c_tomo, c_fid});
    out.add_metadata("reference_curves", kReferenceCurveLabel);
    if (g.strict()) {
      std::vector<double> e, loc;
      for (const auto& r : rows) {
        e.push_back(r.epsilon);
        loc.push_back(static_cast<double>(r.n_local));
      }
      if (rows.size() >= 2) strict_check(loglog_slope(e, loc) < 0.0, "local count does not decrease with epsilon");
    }
    if (g.json()) {
      ojson a = ojson::array();
      for (const auto& r : rows) a.push_back({{"epsilon", r.epsilon}, {"n_local", r.n_local}, {"n_global", r.n_global},
                                              {"n_tomo_ref", r.n_tomo_ref}, {"n_fid_ref", r.n_fid_ref}});
      out.json({{"rows", a}});
    } else {
      out.csv([&](std::ostream& os) { write_figure2_csv(rows, os); });
    }
  }

  void figS1(const Globals& g, Output& out) const {
    const auto d = convex_hull_data(parse_angle(theta), locus_points);
    if (g.strict()) strict_check(d.lambda_lb > 0.0 && d.lambda_lb <= 0.5, "PPT cutoff out of range");
    if (g.json()) {
      ojson locus = ojson::array();
      for (std::size_t i = 0; i < d.locus.size(); ++i)
        locus.push_back({{"lambda1", d.locus[i].first}, {"lambda2", d.locus[i].second}, {"allowed", static_cast<bool>(d.locus_allowed[i])}});
      out.json({{"theta", d.theta}, {"lambda_lb", d.lambda_lb}, {"zz_point", {d.zz_point.first, d.zz_point.second}}, {"locus", locus}});
    } else {
      out.csv([&](std::ostream& os) { write_convex_hull_csv(d, os); });
    }
  }

  void figS2(const Globals& g, Output& out) const {
    LandscapeOptions opt = grid;
    opt.keep_grid = true;
    const auto r = landscape(parse_angle(theta), opt);
    if (g.strict()) check_landscape_strict(r, opt);
    out.add_metadata("argmin_alpha", r.alpha_min);
    out.add_metadata("argmin_phi", r.phi_min);
    out.add_metadata("min_q", r.q_min);
    if (g.json()) {
      ojson cells = ojson::array();
      for (const auto& c : r.grid) cells.push_back({c.alpha, c.phi, c.lambda1, c.lambda2, c.qmax});
      out.json({{"columns", {"alpha", "phi", "lambda1", "lambda2", "qmax"}}, {"grid", cells}});
    } else {
      out.csv([&](std::ostream& os) { write_landscape_csv(r, os); });
    }
  }

  static void check_landscape_strict(const LandscapeReport& r, const LandscapeOptions& opt) {
    const double T = std::pow(std::tan(r.theta), 2);
    for (const auto& p : r.ridge) {
      if (!p.crossing) continue;
      const double P = std::pow(std::tan(p.phi), 2);
      const double expect = 0.5 + (T + P * P) / (2.0 * (T + P * P + 4.0 * P * (1.0 + T)));
      strict_check(std::abs(p.value - expect) <= 1e-9, "ridge value disagrees with the crossing formula");
    }
    LandscapeOptions o = opt;
    o.keep_grid = false;
    const auto s = landscape_serial(r.theta, o);
    strict_check(s.alpha_min == r.alpha_min && s.phi_min == r.phi_min && s.q_min == r.q_min,
                 "parallel and serial landscape disagree");
  }
};

struct LandscapeCmd {
  std::string theta = "pi/8";
  std::string grid_out;
  LandscapeOptions grid;

  void run(const Globals& g, Output& out) const {
    const double th = parse_angle(theta);
    LandscapeOptions opt = grid;
    opt.keep_grid = !grid_out.empty();
    const auto r = landscape(th, opt);
    if (g.strict()) FigureCmd::check_landscape_strict(r, opt);
    if (!grid_out.empty()) {
      std::ofstream f(grid_out, std::ios::binary | std::ios::trunc);
      if (!f) fail(ErrorCode::InvalidArgument, "cannot open '" + grid_out + "'");
      write_landscape_csv(r, f);
    }
    ojson f;
    f["theta"] = th;
    f["alpha_min"] = r.alpha_min;
    f["phi_min"] = r.phi_min;
    f["p_min"] = r.p_min;
    f["q_min"] = r.q_min;
    f["alpha_step"] = r.alpha_step;
    f["phi_step"] = r.phi_step;
    f["alpha_closed_form"] = two_qubit_alpha(th);
    f["p_closed_form"] = std::tan(th);
    f["q_closed_form"] = two_qubit_q(th);
    if (g.json()) {
      ojson ridge = ojson::array();
      for (const auto& p : r.ridge) ridge.push_back({{"phi", p.phi}, {"alpha", p.alpha}, {"value", p.value}, {"crossing", p.crossing}});
      f["ridge"] = ridge;
    }
    out.record(f);
  }
};

struct SimulateCmd {
  StrategySource src;
  std::string device = "worst-case";
  double device_epsilon = 0.1;
  bool promise = false;
  std::int64_t n = 100;
  std::int64_t trials = 100000;
  std::string transcript;
  std::int64_t transcript_trials = 100;
  bool record_settings = false;

  void run(const Globals& g, Output& out) const {
    const Strategy s = src.build();
    const std::optional<double> promise_eps = promise ? std::optional<double>(device_epsilon) : std::nullopt;
    DeviceModel dev = DeviceModel::honest();
    if (device == "worst-case") {
      dev = DeviceModel::iid(worst_case_state(s, device_epsilon).sigma.matrix(), promise_eps);
    } else if (device == "mixed") {
      dev = DeviceModel::iid(random_mixed_state(s.target(), 1.0 - device_epsilon, g.seed).sigma.matrix(), promise_eps);
    }
    const EnsembleStats st = estimate_power(s, dev, n, trials, g.seed);
    const double predicted = predicted_acceptance(s, dev, n);
    if (g.strict()) {
      strict_check(st.wilson.lo <= st.accept_rate && st.accept_rate <= st.wilson.hi, "accept rate outside its interval");
      if (dev.mode() == DeviceMode::Honest) strict_check(st.accepted == st.trials, "honest device was rejected");
    }
    if (!transcript.empty()) {
      std::ofstream f(transcript, std::ios::binary | std::ios::trunc);
      if (!f) fail(ErrorCode::InvalidArgument, "cannot open '" + transcript + "'");
      const PassTable table = build_pass_table(s, dev, n);
      std::vector<RunResult> runs;
      for (std::int64_t t = 0; t < std::min(trials, transcript_trials); ++t) {
        runs.push_back(run_protocol(s, table, n, g.seed, static_cast<std::uint64_t>(t), record_settings));
      }
      write_transcript_jsonl(s, runs, f);
    }
    ojson f;
    f["kind"] = to_string(s.kind());
    f["device"] = device;
    f["device_epsilon"] = device == "honest" ? ojson(nullptr) : ojson(device_epsilon);
    f["n"] = n;
    f["trials"] = st.trials;
    f["accepted"] = st.accepted;
    f["accept_rate"] = st.accept_rate;
    f["wilson_lo"] = st.wilson.lo;
    f["wilson_hi"] = st.wilson.hi;
    f["wilson_sigma"] = st.wilson.sigma;
    f["predicted"] = predicted;
    f["deviation_sigmas"] = st.wilson.sigma > 0 ? (st.accept_rate - predicted) / st.wilson.sigma : 0.0;
    out.record(f);
  }
};

struct StabilizerCmd {
  GroupSource group;
  std::string subset;
  std::vector<double> mu;

  void run(const Globals& g, Output& out) const {
    const StabilizerGroup grp = group.build();
    const int n = grp.num_qubits();
    const ParityCheck pc = mu.empty() ? parity_check(grp) : parity_check(grp, mu);
    const Ket psi = grp.stabilized_state();
    std::optional<double> avg_residual;
    if (n <= kDenseCheckMaxQubits) {
      CMatrix avg = CMatrix::Zero(static_cast<Eigen::Index>(grp.order()), static_cast<Eigen::Index>(grp.order()));
      for (const auto& p : grp.elements()) avg += p.dense();
      avg /= static_cast<double>(grp.order());
      avg_residual = (avg - psi.projector()).cwiseAbs().maxCoeff();
      if (g.strict()) strict_check(*avg_residual <= tol::kDerived, "group average is not the target projector");
    }
    std::optional<ojson> subset_json;
    if (!subset.empty()) {
      std::vector<std::size_t> idx;
      for (const auto& s : split_list(subset)) {
        try {
          idx.push_back(static_cast<std::size_t>(std::stoull(s)));
        } catch (const std::exception&) {
          fail(ErrorCode::ParseError, "bad subset index '" + s + "'");
        }
      }
      const SubsetOutcome res = subset_strategy(grp, idx);
      ojson sj;
      if (const auto* deg = std::get_if<DegenerateSubset>(&res)) {
        sj["degenerate"] = true;
        sj["acceptance"] = deg->acceptance;
        sj["stabilized_dim"] = deg->stabilized_dim;
        sj["fooling_state"] = complex_list(deg->fooling_state.amplitudes());
      } else {
        sj["degenerate"] = false;
        sj["q"] = metrics(std::get<Strategy>(res)).q;
      }
      subset_json = std::move(sj);
    }
    if (!g.json()) {
      out.add_metadata("generators", group_to_json(grp));
      if (subset_json) out.add_metadata("subset", *subset_json);
      out.csv([&](std::ostream& os) {
        os << "column,weight,special";
        for (int j = 0; j < n; ++j) os << ",g" << j;
        os << '\n';
        for (std::size_t k = 0; k < grp.order(); ++k) {
          const bool special = std::find(pc.special_columns.begin(), pc.special_columns.end(), k) != pc.special_columns.end();
          os << k << ',' << format_real(pc.weights[k]) << ',' << (special ? "true" : "false");
          for (int j = 0; j < n; ++j) os << ',' << static_cast<int>(pc.matrix[static_cast<std::size_t>(j)][k]);
          os << '\n';
        }
      });
      return;
    }
    ojson d;
    d["generators"] = ojson::parse(group_to_json(grp).dump());
    d["num_qubits"] = n;
    ojson elems = ojson::array();
    if (n <= kDenseCheckMaxQubits) {
      for (const auto& p : grp.elements()) elems.push_back(p.to_string());
      d["elements"] = elems;
    }
    d["stabilized_state"] = complex_list(psi.amplitudes());
    d["group_average_residual"] = avg_residual ? ojson(*avg_residual) : ojson(nullptr);
    d["q_generators"] = metrics(generator_strategy(grp)).q;
    if (grp.order() * grp.order() * (grp.order() - 1) <= (std::size_t{1} << 27)) {
      d["q_full"] = metrics(full_stabilizer_strategy(grp)).q;
    }
    ojson parity;
    parity["matrix"] = pc.matrix;
    parity["weights"] = pc.weights;
    parity["special_columns"] = pc.special_columns;
    parity["max_special_weight"] = pc.max_special_weight();
    parity["dense_verified"] = pc.dense_verified;
    d["parity_check"] = parity;
    if (subset_json) d["subset"] = *subset_json;
    out.json(d);
  }
};

void add_grid_options(CLI::App* app, LandscapeOptions& grid) {
  app->add_option("--alpha-points", grid.alpha_points, "Coarse alpha grid size")->check(CLI::Range(3, 100000));
  app->add_option("--phi-points", grid.phi_points, "Coarse phi grid size")->check(CLI::Range(1, 100000));
  app->add_option("--refine-passes", grid.refine_passes, "Zoom passes around the argmin")->check(CLI::Range(0, 50));
  app->add_option("--refine-points", grid.refine_points, "Grid size of each zoom pass")->check(CLI::Range(3, 100000));
}

std::string joined_command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

int run(int argc, char** argv) {
  apply_thread_cap_from_env();
  CLI::App app{"Optimal local verification strategies for entangled states: construction, sample counts and simulation."};
  app.name("qverify");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file; flags override its values");

  Globals g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tolerance-profile", g.tolerance_profile, "strict adds post-hoc invariant checks")
      ->check(CLI::IsMember({"strict", "default"}));
  app.add_flag_callback("--version", [] {
    std::cout << "qverify " << QVERIFY_VERSION << '\n';
    throw CLI::Success();
  }, "Print the version");

  StrategyCmd strategy_cmd;
  auto* c_strategy = app.add_subcommand("strategy", "Build a strategy and report q, trace and settings");
  strategy_cmd.src.add(c_strategy);

  SampleCountCmd count_cmd;
  auto* c_count = app.add_subcommand("samplecount", "Exact and asymptotic measurement counts");
  count_cmd.src.add(c_count);
  c_count->add_option("--epsilon", count_cmd.epsilon, "Infidelity promise gap");
  c_count->add_option("--delta", count_cmd.delta, "1 - statistical power");

  FigureCmd fig_cmd;
  auto* c_fig = app.add_subcommand("figure", "Figure data tables");
  c_fig->add_option("which", fig_cmd.which, "fig1, fig2, figS1 or figS2")->required()->check(CLI::IsMember({"fig1", "fig2", "figS1", "figS2"}));
  c_fig->add_option("--epsilon", fig_cmd.epsilon, "Infidelity (fig1)");
  c_fig->add_option("--delta", fig_cmd.delta, "1 - power (fig1, fig2)");
  c_fig->add_option("--theta", fig_cmd.theta, "Target angle (fig2, figS1, figS2)");
  c_fig->add_option("--theta-points", fig_cmd.theta_points, "Evenly spaced angles on [0, pi/2] for fig1 (0 = default grid)");
  c_fig->add_option("--eps-min", fig_cmd.eps_min, "Smallest epsilon (fig2)");
  c_fig->add_option("--eps-max", fig_cmd.eps_max, "Largest epsilon (fig2)");
  c_fig->add_option("--eps-points", fig_cmd.eps_points, "Log-spaced epsilon count (fig2)");
  c_fig->add_option("--c-tomo", fig_cmd.c_tomo, "Constant of the tomography reference curve C/eps^2");
  c_fig->add_option("--c-fid", fig_cmd.c_fid, "Constant of the fidelity-estimation reference curve C/eps^2");
  c_fig->add_option("--locus-points", fig_cmd.locus_points, "Points on the trace-3 locus (figS1)");
  add_grid_options(c_fig, fig_cmd.grid);

  SimulateCmd sim_cmd;
  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo run of the accept/reject protocol");
  sim_cmd.src.add(c_sim);
  c_sim->add_option("--device", sim_cmd.device, "honest, worst-case or mixed")->check(CLI::IsMember({"honest", "worst-case", "mixed"}));
  c_sim->add_option("--device-epsilon", sim_cmd.device_epsilon, "Infidelity of the adversary's state");
  c_sim->add_flag("--promise", sim_cmd.promise, "Reject adversary states with fidelity above 1 - device-epsilon");
  c_sim->add_option("--n", sim_cmd.n, "Copies per run")->check(CLI::PositiveNumber);
  c_sim->add_option("--trials", sim_cmd.trials, "Independent runs")->check(CLI::PositiveNumber);
  c_sim->add_option("--transcript", sim_cmd.transcript, "Write JSON-lines run transcripts here");
  c_sim->add_option("--transcript-trials", sim_cmd.transcript_trials, "Number of runs in the transcript");
  c_sim->add_flag("--record-settings", sim_cmd.record_settings, "Include the drawn setting labels in transcripts");

  LandscapeCmd land_cmd;
  auto* c_land = app.add_subcommand("landscape", "Grid search of q(alpha, phi) for the four-setting family");
  c_land->add_option("--theta", land_cmd.theta, "Target angle");
  c_land->add_option("--grid-out", land_cmd.grid_out, "Also write the coarse grid CSV here");
  add_grid_options(c_land, land_cmd.grid);

  StabilizerCmd stab_cmd;
  auto* c_stab = app.add_subcommand("stabilizer", "Group inspection and parity-check matrix");
  stab_cmd.group.add(c_stab);
  c_stab->add_option("--subset", stab_cmd.subset, "Comma-separated element indices for a subset strategy");
  c_stab->add_option("--mu", stab_cmd.mu, "Generator weights for the parity-check weights")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: ParseError: " << e.what() << '\n';
    return 2;
  }

  ojson meta;
  meta["tool"] = "qverify";
  meta["version"] = QVERIFY_VERSION;
  meta["command_line"] = joined_command_line(argc, argv);
  meta["seed"] = g.seed;
  meta["tolerance_profile"] = g.tolerance_profile;
  meta["effective_config"] = effective_config(app);
  Output out(g, meta);

  if (c_strategy->parsed()) strategy_cmd.run(g, out);
  else if (c_count->parsed()) count_cmd.run(g, out);
  else if (c_fig->parsed()) fig_cmd.run(g, out);
  else if (c_sim->parsed()) sim_cmd.run(g, out);
  else if (c_land->parsed()) land_cmd.run(g, out);
  else if (c_stab->parsed()) stab_cmd.run(g, out);
  return 0;
}

}  // namespace
}  // namespace qverify::cli

int main(int argc, char** argv) {
  try {
    return qverify::cli::run(argc, argv);
  } catch (const qverify::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == qverify::ErrorCode::InvariantViolation ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: InvariantViolation: unexpected failure: " << e.what() << '\n';
    return 3;
  }
}
