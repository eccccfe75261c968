#pragma once
// Nonlinear Schroedinger i u_t + Lap u = F(u) on the torus grid, solved two
// independent ways: Picard iteration on the Duhamel form
//   u(t) = S(t) u0 - i int_0^t S(t - tau) F(u(tau)) dtau
// over time windows, and a Strang split-step integrator whose nonlinear
// substep is an exact phase rotation.  The two share no time-stepping code,
// so their agreement is a genuine cross-check.
//
// Norm tracking along a solution reports decomposition-based quantities as
// explicit upper bounds only: the pieces are the initial data's low-pass
// splitting propagated by the free flow, plus the Duhamel remainder merged
// into the j = 0 piece.  No infimum over splittings is ever claimed.

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "uniscale/norms.hpp"
#include "uniscale/schrodinger.hpp"
#include "uniscale/window.hpp"

namespace uniscale {

// F(u) = lambda |u|^{2 kappa} u.
struct PowerNonlinearity {
  int kappa = 1;
  double lambda = 0.0;
};
// F(u) = (e^{lambda |u|^2} - 1) u, evaluated directly (no series truncation).
struct ExpNonlinearity {
  double lambda = 0.0;
};
using Nonlinearity = std::variant<PowerNonlinearity, ExpNonlinearity>;

// Pointwise evaluation on a physical-domain field.  Throws numeric_error when
// the exponential argument lambda |u|^2 exceeds 700 or a power overflows.
Field nonlinearity_eval(const Field& u, const Nonlinearity& nl);

struct NLSProblem {
  GridSpec grid{1, 256, 8};
  Nonlinearity nonlinearity = PowerNonlinearity{};
  Field u0;
  double T = 1.0;

  void validate() const;  // kappa >= 1, T > 0, u0 lives on grid
};

struct SolverConfig {
  std::size_t steps = 16;       // time steps per window, >= 8
  std::size_t windows = 1;      // equal windows covering [0, T]
  double tol = 1e-10;           // relative sup-in-time L2 increment
  std::size_t max_iters = 50;
  double ball_constant = 1.0;   // empirical C in the ball radius M = 2C||u0||_2
  std::vector<NormSpec> track;  // extra norms recorded along the solution

  void validate() const;
};

struct NormHistory {
  std::vector<double> t;
  std::vector<double> l2;     // ||u(t)||_2
  std::vector<double> m0_21;  // unit-scale modulation norm, p=2 q=1
  std::vector<std::string> tracked_names;
  std::vector<std::vector<double>> tracked;  // tracked[i] parallels t
};

struct PicardResult {
  Trajectory traj;  // full horizon on success, truncated on failure
  NormHistory history;
  bool converged = true;
  bool blowup = false;
  std::size_t windows_done = 0;
  std::vector<std::size_t> iterations;  // Picard sweeps per window
  std::vector<double> first_increment;  // relative increment of sweep 1, per window
  std::vector<double> final_increment;  // relative increment at exit, per window
  double ball_radius = 0.0;             // M = 2C ||u0||_2
  double safety_product = 0.0;          // C M^{2k} (power) / C (e^{|lambda| M^2} - 1) (exp)
  bool ball_exceeded = false;           // some iterate left the ball of radius M
  std::string diagnostic;
  // sup-in-time unit-scale space-time norm of the whole trajectory
  std::vector<std::pair<std::string, double>> spacetime;
};

PicardResult picard_solve(const NLSProblem& prob, const SolverConfig& cfg);

// Strang splitting: exact spectral half-steps of the Laplacian around an
// exact pointwise phase rotation (the modulus is invariant under the
// nonlinear substep).  Nodes at multiples of dt up to T; second order in dt.
Trajectory splitstep_reference(const NLSProblem& prob, double dt);

struct ContractionReport {
  std::vector<double> amplitude;             // scaling applied to u0
  std::vector<double> factor;                // sup ||Tu - Tv|| / ||u - v|| per amplitude
  double factor_at_base = 0.0;               // factor at the unscaled problem
  bool contracting = false;                  // factor_at_base <= 1/2
  double slope = 0.0;                        // log-log fit of factor vs amplitude
  double expected_slope = 0.0;               // 2 kappa for the power nonlinearity
  double rel_err = 0.0;
  std::vector<std::size_t> predicted_iters;  // geometric prediction per amplitude
  std::vector<std::size_t> observed_iters;   // actual Picard sweeps per amplitude
};

// Empirical contraction factor of the Duhamel map over the first window,
// measured on random perturbation pairs inside the ball of radius M, swept
// over data amplitudes.
ContractionReport contraction_audit(const NLSProblem& prob, const SolverConfig& cfg,
                                    const std::vector<double>& amplitudes = {1.0, 0.5, 0.25,
                                                                             0.125},
                                    std::size_t pairs = 3, std::uint64_t seed = 7);

struct BlowupReport {
  bool flagged = false;
  double t_flag = 0.0;         // first time the tracked norm crossed the threshold
  double t_lower_bound = 0.0;  // last time the solver is still trusted
  double initial = 0.0;        // tracked norm at the first node
  double peak = 0.0;           // max tracked norm over the trajectory
  std::string note;            // diagnostic only; never a continuum claim
};

// Flags threshold crossing of a tracked norm or solver failure.  The report
// is a diagnostic: a torus discretization cannot certify continuum blowup.
BlowupReport blowup_monitor(const PicardResult& res, const WindowFamily& fam,
                            const NormSpec& spec, double threshold);

// Lacunary data ladder: one lattice mode per scale j in {-11, ..., -J},
// frequency center (j, 0, ...), spectral amplitude 2^{|j| d} / (|j| ln^2 |j|),
// tilted by 2^{j/kappa} when kappa >= 1.  Each piece occupies a single box at
// its own scale with plateau weight one, so the per-scale decomposition is
// exact; J = 10 gives the empty sum.
struct SupercriticalFamily {
  Field f;            // spectral sum over the ladder
  Decomposition dec;  // one single-mode piece per scale
  std::vector<double> amp;
  int J = 10;
  int kappa = 0;  // 0 = plain coefficients
};
SupercriticalFamily supercritical_family(int J, int kappa, const GridSpec& g);

struct SupercriticalRow {
  int J = 0;
  Exponent ptilde{2};
  double m0 = 0.0;               // unit-scale modulation norm M^0_{ptilde,1}
  double upper = 0.0;            // ladder upper bound: sum_j 2^{jd} ||f_j||_{1,1;j}
  double upper_increment = 0.0;  // change from the previous J at this ptilde
  double predicted = 0.0;        // deepest-rung amplitude 2^{J d} / (J ln^2 J)
  double m0_ratio = 0.0;         // m0 / previous m0; 0 on the first row
};

struct SupercriticalReport {
  GridSpec grid{1, 2048, 32};
  int kappa = 0;
  std::vector<SupercriticalRow> rows;
};

// Table demonstrating the divergence split: the unit-scale column grows
// without bound in J while the ladder upper bound converges.
SupercriticalReport verify_supercritical_norms(const std::vector<int>& J_list,
                                               const std::vector<Exponent>& ptilde_list,
                                               const GridSpec& g, int kappa = 0);

}  // namespace uniscale
