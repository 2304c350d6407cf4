#pragma once

// The adversary's side of the verification game: worst-case states, the
// general verifier-adversary value, symmetry averaging for two-qubit targets
// and the (alpha, phi) landscape of the four-setting strategy family.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "qverify/qcore.hpp"
#include "qverify/strategy.hpp"

namespace qverify {

enum class AdversaryKind { WorstCasePure, RandomPure, RandomMixed, Custom };

struct AdversaryState {
  HermitianOperator sigma;
  double fidelity;  // <psi|sigma|psi>
  AdversaryKind kind;
};

// Validates sigma (PSD within -1e-10, unit trace within 1e-12). When epsilon
// is given the fidelity must not exceed 1 - epsilon + 1e-12.
AdversaryState make_adversary_state(const CMatrix& sigma, const Ket& target, AdversaryKind kind,
                                    std::optional<double> epsilon = std::nullopt);
AdversaryState pure_adversary_state(const Ket& state, const Ket& target, AdversaryKind kind);

// sqrt(1-eps)|psi> + sqrt(eps)|psi_perp_max>. DegenerateStrategy if q = 1.
AdversaryState worst_case_state(const Strategy& s, double epsilon);

// Hilbert-Schmidt random density matrix with <psi|sigma|psi> = fidelity
// exactly, obtained by mixing with |psi><psi| or with the part of the sample
// orthogonal to psi.
AdversaryState random_mixed_state(const Ket& target, double fidelity, std::uint64_t seed);

struct GameValue {
  double accept_prob;
  AdversaryState maximizer;
  double eps_bar;  // infidelity of the maximizer
};

struct GameValueOptions {
  int coarse_points = 1000;
  double refine_tolerance = 1e-10;
};

// max tr(Omega sigma) over pure sigma with <psi|sigma|psi> <= 1 - eps.
// Omega need not fix the target.
GameValue game_value(const HermitianOperator& omega, const Ket& target, double epsilon, const GameValueOptions& opt = {});

// For fixed eps_bar: max over unit |psi_perp> orthogonal to psi of
// eps_bar <psi_perp|Omega|psi_perp> + 2 sqrt(eps_bar (1 - eps_bar)) Re<psi|Omega|psi_perp>.
struct InnerSolution {
  double value;
  CVector psi_perp;  // full-space vector, unit norm
};
InnerSolution game_inner_max(const HermitianOperator& omega, const Ket& target, double eps_bar);

// Average over complex conjugation, SWAP and the phase family
// diag(1, e^{i z}) (x) diag(1, e^{-i z}); all are symmetries of
// sin(theta)|00> + cos(theta)|11>.
HermitianOperator twirl_average(const HermitianOperator& omega, double theta);

// Product state annihilating sin(theta)|00> + cos(theta)|11>:
// (cos phi|0> + e^{i eta} sin phi|1>) (x) (sin phi|0> - e^{-i eta} tan(theta) cos phi|1>) / norm.
// phi in [0, pi/2]; the endpoints give |01> and |10>.
Ket annihilator_state(double theta, double phi, double eta);

// --- landscape -------------------------------------------------------------

// (lambda1, lambda2) of alpha P+_ZZ + (1 - alpha) <1 - |tau><tau|> with
// P = tan^2 phi and T = tan^2 theta.
std::pair<double, double> landscape_eigenvalues(double theta, double alpha, double phi);
// Same pair, evaluated by assembling and twirling the 4x4 operator.
std::pair<double, double> landscape_eigenvalues_matrix(double theta, double alpha, double phi);

struct LandscapeOptions {
  int alpha_points = 400;
  int phi_points = 400;
  int refine_passes = 2;
  int refine_points = 400;
  bool keep_grid = true;  // store the coarse grid for export
};

struct LandscapeCell {
  double alpha, phi, lambda1, lambda2, qmax;
};

// Minimizer over alpha for fixed phi. On the ridge lambda1 = lambda2; when the
// lines do not cross in [0, 1] the minimum sits at alpha = 0.
struct RidgePoint {
  double phi, alpha, value;
  bool crossing;  // lambda1 = lambda2 at the minimizer
};

struct LandscapeReport {
  double theta = 0;
  double alpha_min = 0, phi_min = 0, p_min = 0, q_min = 0;
  double alpha_step = 0, phi_step = 0;  // spacing of the finest pass
  std::vector<LandscapeCell> grid;      // coarse pass, phi-major
  std::vector<RidgePoint> ridge;        // one per coarse phi
};

// Grid search of max(lambda1, lambda2): alpha in [0, 1] endpoints included,
// phi at cell midpoints of (0, pi/2). Within every phi column the best grid
// alpha is polished by golden-section search (the objective is convex in
// alpha). refine_passes then zoom to +-1 phi cell around the running argmin.
// theta in (0, pi/2) away from pi/4.
LandscapeReport landscape(double theta, const LandscapeOptions& opt = {});
// Single-threaded reference; identical output to landscape().
LandscapeReport landscape_serial(double theta, const LandscapeOptions& opt = {});

void write_landscape_csv(const LandscapeReport& r, std::ostream& os);

// Boundary of the reachable (lambda1, lambda2) region.
struct ConvexHullData {
  double theta;
  double lambda_lb;                                 // sin 2t / (1 + sin 2t)
  std::vector<std::pair<double, double>> locus;     // lambda2 = 1 - lambda1 / 2, lambda1 in [0, 1]
  std::vector<bool> locus_allowed;                  // lambda1 >= lambda_lb
  std::pair<double, double> zz_point{1.0, 0.0};
};
ConvexHullData convex_hull_data(double theta, int points = 101);
void write_convex_hull_csv(const ConvexHullData& d, std::ostream& os);

// lambda1 of the trace-3 part alone at angle phi.
double trace3_lambda1(double theta, double phi);
double ppt_lower_bound(double theta);

}  // namespace qverify
