#include "qverify/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "qverify/csv.hpp"

namespace qverify {

using std::numbers::pi;

AdversaryState make_adversary_state(const CMatrix& sigma, const Ket& target, AdversaryKind kind, std::optional<double> epsilon) {
  if (static_cast<std::size_t>(sigma.rows()) != target.dim()) fail(ErrorCode::BadDim, "density matrix / target mismatch");
  CMatrix s = 0.5 * (sigma + sigma.adjoint());
  if (hermiticity_defect(sigma) > tol::kStructural) fail(ErrorCode::NonHermitian, "density matrix is not Hermitian");
  if (std::abs(s.trace().real() - 1.0) > tol::kStructural) fail(ErrorCode::NotNormalized, "density matrix trace is not 1");
  if (eigenvalues_hermitian(s).back() < -tol::kDerived) fail(ErrorCode::InvalidArgument, "density matrix is not PSD");
  HermitianOperator op(std::move(s));
  const double f = op.expectation(target);
  if (epsilon && f > 1.0 - *epsilon + tol::kStructural) {
    fail(ErrorCode::InvalidArgument, "state violates the fidelity promise");
  }
  return AdversaryState{std::move(op), f, kind};
}

AdversaryState pure_adversary_state(const Ket& state, const Ket& target, AdversaryKind kind) {
  return make_adversary_state(state.projector(), target, kind);
}

AdversaryState worst_case_state(const Strategy& s, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) fail(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1]");
  const StrategyMetrics m = metrics(s);
  if (m.degenerate) fail(ErrorCode::DegenerateStrategy, "an orthogonal state passes with certainty");
  const CVector v = std::sqrt(1.0 - epsilon) * s.target().amplitudes() + std::sqrt(epsilon) * m.worst_orthogonal.amplitudes();
  return pure_adversary_state(Ket::normalized(v), s.target(), AdversaryKind::WorstCasePure);
}

AdversaryState random_mixed_state(const Ket& target, double fidelity, std::uint64_t seed) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) fail(ErrorCode::InvalidArgument, "fidelity must lie in [0, 1]");
  const auto d = static_cast<Eigen::Index>(target.dim());
  const Ket big = haar_random_ket(target.dim() * target.dim(), seed);
  // amplitudes indexed (system, ancilla); tracing the ancilla gives A A^dagger
  const CMatrix a = Eigen::Map<const CMatrix>(big.amplitudes().data(), d, d).transpose();
  CMatrix sigma = a * a.adjoint();
  const CMatrix psi = target.projector();
  const double f0 = (psi * sigma).trace().real();
  if (fidelity >= f0) {
    const double t = f0 >= 1.0 ? 0.0 : (fidelity - f0) / (1.0 - f0);
    sigma = t * psi + (1.0 - t) * sigma;
  } else {
    const CMatrix pi_perp = CMatrix::Identity(d, d) - psi;
    CMatrix perp = pi_perp * sigma * pi_perp;
    perp /= perp.trace().real();
    const double t = 1.0 - fidelity / f0;
    sigma = (1.0 - t) * sigma + t * perp;
  }
  sigma = 0.5 * (sigma + sigma.adjoint()).eval();
  sigma /= sigma.trace().real();
  return make_adversary_state(sigma, target, AdversaryKind::RandomMixed);
}

// ---------------------------------------------------------------------------
// game value

namespace {

struct InnerProblem {
  CMatrix basis;                // d x (d-1)
  std::vector<double> m;        // eigenvalues of B^dagger Omega B, descending
  CMatrix v;                    // eigenvectors
  CVector w_tilde;              // V^dagger B^dagger Omega psi
  double omega_psi;             // <psi|Omega|psi>
};

InnerProblem prepare(const HermitianOperator& omega, const Ket& target) {
  if (omega.dim() != target.dim()) fail(ErrorCode::BadDim, "operator/target dimension mismatch");
  InnerProblem p;
  p.basis = orthocomplement_basis(target);
  CMatrix block = p.basis.adjoint() * omega.matrix() * p.basis;
  block = 0.5 * (block + block.adjoint()).eval();
  BlockSpectrum spec = eig_hermitian_block(block);
  p.m = std::move(spec.values);
  p.v = std::move(spec.vectors);
  p.w_tilde = p.v.adjoint() * (p.basis.adjoint() * (omega.matrix() * target.amplitudes()));
  p.omega_psi = omega.expectation(target);
  return p;
}

// Maximizes e x^dagger M x + 2 c Re(w^dagger x) over unit x, in M's
// eigenbasis. Returns the value and the coefficient vector.
std::pair<double, CVector> solve_inner(const InnerProblem& p, double e) {
  const auto n = static_cast<Eigen::Index>(p.m.size());
  const double c = std::sqrt(std::max(0.0, e * (1.0 - e)));
  const double top = e * p.m.front();
  CVector y = CVector::Zero(n);

  double wnorm = p.w_tilde.norm();
  if (c * wnorm <= 1e-300) {
    y(0) = 1.0;
    return {top, y};
  }
  // Components in the top eigenspace decide between the regular and hard case.
  Eigen::Index top_count = 0;
  double top_weight = 0.0;
  while (top_count < n && p.m.front() - p.m[static_cast<std::size_t>(top_count)] <= 1e-12) {
    top_weight += std::norm(p.w_tilde(top_count));
    ++top_count;
  }
  auto norm2_at = [&](double lambda, Eigen::Index from) {
    double s = 0.0;
    for (Eigen::Index i = from; i < n; ++i) {
      const double den = lambda - e * p.m[static_cast<std::size_t>(i)];
      s += c * c * std::norm(p.w_tilde(i)) / (den * den);
    }
    return s;
  };
  auto value_of = [&](const CVector& yy) {
    double v = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) v += e * p.m[static_cast<std::size_t>(i)] * std::norm(yy(i));
    return v + 2.0 * c * (p.w_tilde.adjoint() * yy)(0).real();
  };

  if (top_weight <= 1e-26 * wnorm * wnorm) {
    const double rest = top_count < n ? norm2_at(top, top_count) : 0.0;
    if (rest <= 1.0) {
      for (Eigen::Index i = top_count; i < n; ++i) y(i) = c * p.w_tilde(i) / (top - e * p.m[static_cast<std::size_t>(i)]);
      y(0) += std::sqrt(std::max(0.0, 1.0 - rest));
      return {value_of(y), y};
    }
  }
  // Secular equation sum c^2 |w_i|^2 / (lambda - e m_i)^2 = 1 on (top, top + c|w|].
  double lo = top, hi = top + c * wnorm;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (norm2_at(mid, 0) > 1.0 ? lo : hi) = mid;
  }
  const double lambda = hi;
  for (Eigen::Index i = 0; i < n; ++i) y(i) = c * p.w_tilde(i) / (lambda - e * p.m[static_cast<std::size_t>(i)]);
  y.normalize();
  return {value_of(y), y};
}

double total_value(const InnerProblem& p, double e, double inner) { return (1.0 - e) * p.omega_psi + inner; }

}  // namespace

InnerSolution game_inner_max(const HermitianOperator& omega, const Ket& target, double eps_bar) {
  if (!(eps_bar >= 0.0 && eps_bar <= 1.0)) fail(ErrorCode::InvalidArgument, "eps_bar must lie in [0, 1]");
  const InnerProblem p = prepare(omega, target);
  auto [val, y] = solve_inner(p, eps_bar);
  return {val, p.basis * (p.v * y)};
}

GameValue game_value(const HermitianOperator& omega, const Ket& target, double epsilon, const GameValueOptions& opt) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) fail(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1]");
  if (opt.coarse_points < 2) fail(ErrorCode::InvalidArgument, "game_value needs at least 2 grid points");
  const InnerProblem p = prepare(omega, target);
  auto f = [&](double e) { return total_value(p, e, solve_inner(p, e).first); };

  const int n = opt.coarse_points;
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = epsilon + (1.0 - epsilon) * i / (n - 1);
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double v = f(grid[static_cast<std::size_t>(i)]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = grid[static_cast<std::size_t>(std::max(0, best - 1))];
  double b = grid[static_cast<std::size_t>(std::min(n - 1, best + 1))];
  double best_e = grid[static_cast<std::size_t>(best)];

  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > opt.refine_tolerance) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  for (double e : {a, b, x1, x2}) {
    const double v = f(e);
    if (v > best_val) {
      best_val = v;
      best_e = e;
    }
  }

  auto [inner, y] = solve_inner(p, best_e);
  const CVector perp = p.basis * (p.v * y);
  const CVector phi = std::sqrt(1.0 - best_e) * target.amplitudes() + std::sqrt(best_e) * perp;
  AdversaryState state = pure_adversary_state(Ket::normalized(phi), target, AdversaryKind::WorstCasePure);
  const double accept = omega.expectation(state.sigma);
  return GameValue{accept, std::move(state), best_e};
}

// ---------------------------------------------------------------------------
// two-qubit symmetry averaging

HermitianOperator twirl_average(const HermitianOperator& omega, double theta) {
  if (omega.dim() != 4) fail(ErrorCode::BadDim, "twirl_average needs a two-qubit operator");
  if (!(theta >= 0.0 && theta <= pi / 2)) fail(ErrorCode::ThetaOutOfDomain, "theta must lie in [0, pi/2]");
  const CMatrix& m = omega.matrix();
  // Conjugation average keeps the real part; swap exchanges indices 1 and 2.
  static constexpr int kSwap[4] = {0, 2, 1, 3};
  CMatrix r = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = 0.5 * (m(i, j).real() + m(kSwap[i], kSwap[j]).real());
  // Phase charges of |00>, |01>, |10>, |11>.
  static constexpr int kCharge[4] = {0, 1, -1, 0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (kCharge[i] != kCharge[j]) r(i, j) = 0.0;
  return HermitianOperator(std::move(r));
}

Ket annihilator_state(double theta, double phi, double eta) {
  if (!(theta > 0.0 && theta < pi / 2)) fail(ErrorCode::ThetaOutOfDomain, "theta must lie in (0, pi/2)");
  if (!(phi >= 0.0 && phi <= pi / 2)) fail(ErrorCode::InvalidArgument, "phi must lie in [0, pi/2]");
  if (!std::isfinite(eta)) fail(ErrorCode::InvalidArgument, "eta must be finite");
  const double t = std::tan(theta);
  const double s = std::sin(phi), c = std::cos(phi);
  CVector first(2), second(2);
  first << c, std::polar(s, eta);
  second << s, -std::polar(t * c, -eta);
  return tensor(Ket::normalized(first), Ket::normalized(second));
}

// ---------------------------------------------------------------------------
// landscape

std::pair<double, double> landscape_eigenvalues(double theta, double alpha, double phi) {
  const double t = std::tan(theta);
  const double T = t * t;
  const double tp = std::tan(phi);
  const double P = tp * tp;
  if (!std::isfinite(P)) return {1.0, (1.0 - alpha) * 0.5};
  const double den = (1.0 + P) * (P + T);
  const double l1 = 1.0 - P * (1.0 - alpha) * (1.0 + T) / den;
  const double l2 = (1.0 - alpha) * (1.0 - (T + P * P) / (2.0 * den));
  return {l1, l2};
}

std::pair<double, double> landscape_eigenvalues_matrix(double theta, double alpha, double phi) {
  const Ket tau = annihilator_state(theta, phi, 0.0);
  CMatrix term = CMatrix::Identity(4, 4) - tau.projector();
  term = 0.5 * (term + term.adjoint()).eval();
  const HermitianOperator avg = twirl_average(HermitianOperator(term), theta);
  const CMatrix omega = alpha * correlation_projector(pauli::Z(), pauli::Z()).matrix() + (1.0 - alpha) * avg.matrix();
  CVector v1 = CVector::Zero(4);
  v1(0) = std::cos(theta);
  v1(3) = -std::sin(theta);
  const double l1 = v1.dot(omega * v1).real();
  const double l2 = omega(1, 1).real();
  return {l1, l2};
}

namespace {

struct Axis {
  double start, step;
  int count;
  double at(int i) const { return start + step * i; }
};

struct ColumnMin {
  double phi, alpha, q;
};

double qmax_at(double theta, double alpha, double phi) {
  const auto [l1, l2] = landscape_eigenvalues(theta, alpha, phi);
  return std::max(l1, l2);
}

// For fixed phi the objective is a max of two affine functions of alpha, so
// golden-section search inside a grid bracket finds the column minimum.
ColumnMin polish_column(double theta, double phi, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = qmax_at(theta, x1, phi), f2 = qmax_at(theta, x2, phi);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = qmax_at(theta, x1, phi);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = qmax_at(theta, x2, phi);
    }
  }
  ColumnMin best{phi, lo, qmax_at(theta, lo, phi)};
  for (double a : {x1, x2, hi}) {
    const double v = qmax_at(theta, a, phi);
    if (v < best.q) best = {phi, a, v};
  }
  return best;
}

std::vector<ColumnMin> scan(double theta, const Axis& alpha, const Axis& phi, std::vector<LandscapeCell>* cells, bool parallel) {
  std::vector<ColumnMin> cols(static_cast<std::size_t>(phi.count));
  const long long na = alpha.count;
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < phi.count; ++j) {
    const double ph = phi.at(j);
    int best_i = 0;
    double best_q = std::numeric_limits<double>::infinity();
    for (int i = 0; i < alpha.count; ++i) {
      const double al = alpha.at(i);
      const auto [l1, l2] = landscape_eigenvalues(theta, al, ph);
      const double qm = std::max(l1, l2);
      if (cells) (*cells)[static_cast<std::size_t>(j * na + i)] = {al, ph, l1, l2, qm};
      if (qm < best_q) {
        best_q = qm;
        best_i = i;
      }
    }
    const double lo = alpha.at(std::max(0, best_i - 1));
    const double hi = alpha.at(std::min(alpha.count - 1, best_i + 1));
    ColumnMin c = polish_column(theta, ph, lo, hi);
    if (best_q < c.q) c = {ph, alpha.at(best_i), best_q};
    cols[static_cast<std::size_t>(j)] = c;
  }
  return cols;
}

// Lowest q, ties to the lowest column index; independent of the schedule.
std::size_t argmin_column(const std::vector<ColumnMin>& cols) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < cols.size(); ++j)
    if (cols[j].q < cols[best].q) best = j;
  return best;
}

LandscapeReport run_landscape(double theta, const LandscapeOptions& opt, bool parallel) {
  if (!(theta > 0.0 && theta < pi / 2)) fail(ErrorCode::ThetaOutOfDomain, "theta must lie in (0, pi/2)");
  if (std::abs(theta - pi / 4) < kSpecialThetaThreshold) {
    fail(ErrorCode::ThetaNearSpecialValue, "the landscape is defined away from pi/4");
  }
  if (opt.alpha_points < 3 || opt.phi_points < 1 || opt.refine_passes < 0 || opt.refine_points < 3) {
    fail(ErrorCode::InvalidArgument, "landscape grid too small");
  }
  LandscapeReport rep;
  rep.theta = theta;

  Axis alpha{0.0, 1.0 / (opt.alpha_points - 1), opt.alpha_points};
  const double dphi = (pi / 2) / opt.phi_points;
  Axis phi{0.5 * dphi, dphi, opt.phi_points};
  if (opt.keep_grid) rep.grid.resize(static_cast<std::size_t>(alpha.count) * static_cast<std::size_t>(phi.count));
  const std::vector<ColumnMin> coarse = scan(theta, alpha, phi, opt.keep_grid ? &rep.grid : nullptr, parallel);
  for (const auto& c : coarse) {
    const auto [l1, l2] = landscape_eigenvalues(theta, c.alpha, c.phi);
    rep.ridge.push_back({c.phi, c.alpha, c.q, std::abs(l1 - l2) <= 1e-9});
  }
  ColumnMin best = coarse[argmin_column(coarse)];

  const Axis full_alpha{0.0, 1.0 / (opt.refine_points - 1), opt.refine_points};
  for (int pass = 0; pass < opt.refine_passes; ++pass) {
    const double p_lo = std::max(0.0, best.phi - phi.step), p_hi = std::min(pi / 2, best.phi + phi.step);
    phi = Axis{p_lo, (p_hi - p_lo) / (opt.refine_points - 1), opt.refine_points};
    const auto cols = scan(theta, full_alpha, phi, nullptr, parallel);
    const ColumnMin& cand = cols[argmin_column(cols)];
    if (cand.q <= best.q) best = cand;
  }
  rep.alpha_min = best.alpha;
  rep.phi_min = best.phi;
  const double tp = std::tan(best.phi);
  rep.p_min = tp * tp;
  rep.q_min = best.q;
  rep.alpha_step = opt.refine_passes > 0 ? full_alpha.step : alpha.step;
  rep.phi_step = phi.step;
  return rep;
}

}  // namespace

LandscapeReport landscape(double theta, const LandscapeOptions& opt) { return run_landscape(theta, opt, true); }
LandscapeReport landscape_serial(double theta, const LandscapeOptions& opt) { return run_landscape(theta, opt, false); }

void write_landscape_csv(const LandscapeReport& r, std::ostream& os) {
  os << "alpha,phi,lambda1,lambda2,qmax\n";
  for (const auto& c : r.grid) {
    os << format_real(c.alpha) << ',' << format_real(c.phi) << ',' << format_real(c.lambda1) << ',' << format_real(c.lambda2)
       << ',' << format_real(c.qmax) << '\n';
  }
}

double trace3_lambda1(double theta, double phi) {
  const double T = std::pow(std::tan(theta), 2);
  const double P = std::pow(std::tan(phi), 2);
  const double sec2 = 1.0 + T;
  const double s2 = std::pow(std::sin(phi), 2);
  return 1.0 - sec2 * s2 / (T + P);
}

double ppt_lower_bound(double theta) {
  const double s = std::sin(2 * theta);
  return s / (1.0 + s);
}

ConvexHullData convex_hull_data(double theta, int points) {
  if (!(theta > 0.0 && theta < pi / 2)) fail(ErrorCode::ThetaOutOfDomain, "theta must lie in (0, pi/2)");
  if (points < 2) fail(ErrorCode::InvalidArgument, "need at least 2 locus points");
  ConvexHullData d;
  d.theta = theta;
  d.lambda_lb = ppt_lower_bound(theta);
  for (int i = 0; i < points; ++i) {
    const double l1 = static_cast<double>(i) / (points - 1);
    d.locus.emplace_back(l1, 1.0 - l1 / 2.0);
    d.locus_allowed.push_back(l1 >= d.lambda_lb);
  }
  return d;
}

void write_convex_hull_csv(const ConvexHullData& d, std::ostream& os) {
  os << "series,lambda1,lambda2\n";
  for (std::size_t i = 0; i < d.locus.size(); ++i) {
    os << (d.locus_allowed[i] ? "trace3_locus_allowed" : "trace3_locus_excluded") << ',' << format_real(d.locus[i].first) << ','
       << format_real(d.locus[i].second) << '\n';
  }
  os << "ppt_cutoff," << format_real(d.lambda_lb) << ',' << format_real(1.0 - d.lambda_lb / 2.0) << '\n';
  os << "zz_point," << format_real(d.zz_point.first) << ',' << format_real(d.zz_point.second) << '\n';
}

}  // namespace qverify
