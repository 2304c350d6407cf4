#include "qverify/samplecount.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "qverify/csv.hpp"

namespace qverify {

using std::numbers::pi;

namespace {

void check_probability_open(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) fail(ErrorCode::InvalidArgument, std::string(name) + " must lie in (0, 1)");
}

std::int64_t ceil_count(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "sample count is not finite");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(x)));
}

}  // namespace

SampleCountReport sample_count_from_gap(double delta_eps, double delta, std::string method_label) {
  check_probability_open(delta, "delta");
  if (!(delta_eps > 0.0 && delta_eps <= 1.0)) fail(ErrorCode::DegenerateStrategy, "detection probability per copy is zero");
  SampleCountReport r;
  r.delta = delta;
  r.delta_eps = delta_eps;
  const double log_inv_delta = -std::log(delta);
  r.n_exact = delta_eps == 1.0 ? 1 : ceil_count(log_inv_delta / -std::log1p(-delta_eps));
  r.n_asymptotic = log_inv_delta / delta_eps;
  r.method_label = std::move(method_label);
  return r;
}

SampleCountReport sample_count_from_q(double q, double epsilon, double delta, std::string method_label) {
  check_probability_open(epsilon, "epsilon");
  if (!(q >= -tol::kDerived && q < 1.0 - tol::kDerived)) fail(ErrorCode::DegenerateStrategy, "q = 1: an orthogonal state always passes");
  SampleCountReport r = sample_count_from_gap(epsilon * (1.0 - q), delta, std::move(method_label));
  r.epsilon = epsilon;
  r.q = q;
  return r;
}

SampleCountReport global_sample_count(double epsilon, double delta) { return sample_count_from_q(0.0, epsilon, delta, "global"); }

SampleCountReport exact_sample_count(const Strategy& s, double epsilon, double delta) {
  check_probability_open(epsilon, "epsilon");
  check_probability_open(delta, "delta");
  const StrategyMetrics m = metrics(s);
  if (m.degenerate) fail(ErrorCode::DegenerateStrategy, "q = 1: an orthogonal state always passes");
  return sample_count_from_q(m.q, epsilon, delta, "exact");
}

double relative_entropy(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) fail(ErrorCode::InvalidArgument, "probabilities must lie in [0, 1]");
  if (b == 0.0 || b == 1.0) {
    if (a == b) return 0.0;
    fail(ErrorCode::UndefinedDivergence, "D(a||b) is infinite for b in {0, 1} and a != b");
  }
  double d = 0.0;
  if (a > 0.0) d += a * std::log(a / b);
  if (a < 1.0) d += (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
  return std::max(0.0, d);
}

SampleCountReport chernoff_stein_count(const HypothesisSpec& spec, double delta) {
  check_probability_open(delta, "delta");
  if (!(spec.p0 > 0.0 && spec.p0 <= 1.0)) fail(ErrorCode::InvalidArgument, "p0 must lie in (0, 1]");
  if (!(spec.p1 >= 0.0 && spec.p1 < spec.p0)) fail(ErrorCode::InvalidArgument, "need 0 <= p1 < p0");
  if (!(spec.chi > 0.0 && spec.chi < 0.5)) fail(ErrorCode::InvalidArgument, "chi must lie in (0, 1/2)");
  const double d = relative_entropy(spec.p0, spec.p1);
  const double gap = spec.p0 - spec.p1;
  const double log_inv_delta = -std::log(delta);
  SampleCountReport r;
  r.delta = delta;
  r.delta_eps = gap;
  r.p0 = spec.p0;
  r.n_exact = ceil_count(log_inv_delta / d);
  r.n_certain_regime = log_inv_delta / gap;
  if (spec.p0 < 1.0) r.n_gap_regime = 2.0 * spec.p0 * (1.0 - spec.p0) / (gap * gap) * log_inv_delta;
  r.n_asymptotic = spec.p0 < 1.0 ? *r.n_gap_regime : *r.n_certain_regime;
  r.method_label = spec.p0 < 1.0 ? "chernoff_stein_gap" : "chernoff_stein_certain";
  return r;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorCode::InvalidArgument, "slope needs two or more matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) fail(ErrorCode::InvalidArgument, "log-log slope needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------

namespace {

bool near(double a, double b) { return std::abs(a - b) < kSpecialThetaThreshold; }

}  // namespace

std::vector<double> figure1_default_grid() {
  constexpr int kPoints = 197;
  std::vector<double> g;
  g.reserve(kPoints);
  for (int i = 0; i < kPoints; ++i) g.push_back((pi / 2) * i / (kPoints - 1));
  return g;
}

std::vector<Figure1Row> figure1_data(double epsilon, double delta, const std::vector<double>& thetas) {
  check_probability_open(epsilon, "epsilon");
  check_probability_open(delta, "delta");
  std::vector<Figure1Row> rows;
  auto push = [&](double theta, const SampleCountReport& r, const char* family) {
    rows.push_back({theta, epsilon, r.n_exact, r.n_asymptotic, family});
  };
  for (double theta : thetas) {
    if (!(theta >= 0.0 && theta <= pi / 2)) fail(ErrorCode::ThetaOutOfDomain, "figure 1 angles must lie in [0, pi/2]");
    if (near(theta, 0.0) || near(theta, pi / 2)) {
      const auto which = near(theta, 0.0) ? ProductTarget::One : ProductTarget::Zero;
      push(theta, exact_sample_count(product_state_strategy(which), epsilon, delta), "product");
      push(theta, sample_count_from_q(two_qubit_q(theta), epsilon, delta, "two_qubit_limit"), "two_qubit_limit");
    } else if (near(theta, pi / 4)) {
      push(theta, exact_sample_count(bell_strategy(), epsilon, delta), "bell");
      push(theta, sample_count_from_q(two_qubit_q(theta), epsilon, delta, "two_qubit_limit"), "two_qubit_limit");
    } else {
      push(theta, exact_sample_count(two_qubit_optimal(theta), epsilon, delta), "two_qubit");
    }
  }
  return rows;
}

void write_figure1_csv(const std::vector<Figure1Row>& rows, std::ostream& os) {
  os << "theta,epsilon,n_exact,n_asymptotic,family\n";
  for (const auto& r : rows) {
    os << format_real(r.theta) << ',' << format_real(r.epsilon) << ',' << format_int(r.n_exact) << ',' << format_real(r.n_asymptotic)
       << ',' << r.family << '\n';
  }
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > lo) || points < 2) fail(ErrorCode::InvalidArgument, "log grid needs 0 < lo < hi and 2+ points");
  std::vector<double> g;
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < points; ++i) g.push_back(std::exp(a + (b - a) * i / (points - 1)));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<Figure2Row> figure2_data(double theta, double delta, const std::vector<double>& epsilons, const ReferenceConstants& refs) {
  if (!(theta >= 0.0 && theta <= pi / 2)) fail(ErrorCode::ThetaOutOfDomain, "theta must lie in [0, pi/2]");
  if (!(refs.tomography > 0.0 && refs.fidelity > 0.0)) fail(ErrorCode::InvalidArgument, "reference constants must be positive");
  double q;
  if (near(theta, 0.0) || near(theta, pi / 2)) {
    q = 0.0;
  } else if (near(theta, pi / 4)) {
    q = metrics(bell_strategy()).q;
  } else {
    q = metrics(two_qubit_optimal(theta)).q;
  }
  std::vector<Figure2Row> rows;
  for (double eps : epsilons) {
    const auto local = sample_count_from_q(q, eps, delta, "local");
    const auto global = global_sample_count(eps, delta);
    rows.push_back({eps, local.n_exact, global.n_exact, refs.tomography / (eps * eps), refs.fidelity / (eps * eps)});
  }
  return rows;
}

void write_figure2_csv(const std::vector<Figure2Row>& rows, std::ostream& os) {
  os << "epsilon,n_local,n_global,n_tomo_ref,n_fid_ref\n";
  for (const auto& r : rows) {
    os << format_real(r.epsilon) << ',' << format_int(r.n_local) << ',' << format_int(r.n_global) << ',' << format_real(r.n_tomo_ref)
       << ',' << format_real(r.n_fid_ref) << '\n';
  }
}

}  // namespace qverify
