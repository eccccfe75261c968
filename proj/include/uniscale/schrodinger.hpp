#pragma once
// Free Schroedinger propagator on the grid and empirical dispersive /
// space-time estimates for its flow.
//
// The propagator is the spectral multiplier e^{-i t |xi|^2}, the sign fixed
// so that u(t) = S(t)u0 solves i u_t + Lap u = 0 exactly on every lattice
// mode.  Torus decay checks are only meaningful before wrap-around, so the
// suites report t_wrap (the time an analytically spreading Gaussian reaches
// a quarter of the box) and stay below it.

#include <vector>

#include "uniscale/corpus.hpp"
#include "uniscale/norms.hpp"
#include "uniscale/report.hpp"
#include "uniscale/window.hpp"

namespace uniscale {

// Space-time exponent pair (gamma, p): L^gamma in time of L^p in space.
struct ExponentPair {
  Exponent gamma = Exponent::infinity();
  Exponent p{2};
};

// gamma(p) defined by 2/gamma(p) = d(1/2 - 1/p); needs p >= 2.
Exponent gamma_of_p(int d, const Exponent& p);
Rat inv_gamma_of_p(int d, const Exponent& p);  // 1/gamma(p), exact

// gamma >= max(2, gamma(p)), p >= 2, and (gamma, p) != (2, inf) in d = 2.
bool admissible(int d, const ExponentPair& pair);
void require_admissible(int d, const ExponentPair& pair);

// delta(p, gamma) = 2/gamma(p) - 2/gamma.
Rat pair_delta(int d, const ExponentPair& pair);

// e^{i t Lap}; same domain out as in.
Field propagate(const Field& u0, double t);

// S(t_n) u0 along a time list.
Trajectory free_flow(const Field& u0, const std::vector<double>& ts);

// Trapezoid Duhamel integral int_0^t S(t - tau) F(tau) dtau.  F must be on
// a uniform time grid starting at 0 and t must lie on a node.
Field duhamel(const Trajectory& F, double t);

// Time at which sqrt(sigma^2 + (t/sigma)^2), the width of a spreading
// Gaussian of initial width sigma, reaches a quarter of the torus edge.
double t_wrap(const GridSpec& g, double sigma);

// ||S(t)u0||_{p,q;j} <= C <2^{2j} t>^{d|1/2-1/p|} ||u0||_{p,q;j}.
RatioReport check_propagator_mj_bound(const WindowFamily& fam, const Corpus& corpus,
                                      const std::vector<int>& j_list, const Exponent& p,
                                      const Exponent& q, const std::vector<double>& t_list);

// ||box_{j,k} S(t)u0||_p <= C min(|t|^{-2/gamma(p)}, 2^{4j/gamma(p)})
//                            ||box_{j,k} u0||_{p'}.
RatioReport check_dispersive_decay(const WindowFamily& fam, const Corpus& corpus,
                                   const ExponentPair& pair, const std::vector<int>& j_list,
                                   const std::vector<double>& t_list);

// ||box_{j,k} S(.)u0||_{L^gamma([0,T]; L^p)} <= C 2^{2j(1/gamma(p) - 1/gamma)}
//                                              ||box_{j,k} u0||_2.
RatioReport check_strichartz_homogeneous(const WindowFamily& fam, const Corpus& corpus,
                                         const ExponentPair& pair,
                                         const std::vector<int>& j_list, double T,
                                         std::size_t nt);

// For the Duhamel integral of a separable source F(tau) = b(tau) f with b a
// smooth time bump:
// ||box_{j,k} AF||_{L^beta(L^r)} <= C 2^{2j(1/gamma(p)-1/gamma)}
//     2^{2j(1/gamma(r)-1/beta)} ||box_{j,k} F||_{L^{gamma'}(L^{p'})}.
RatioReport check_strichartz_inhomogeneous(const WindowFamily& fam, const Corpus& corpus,
                                           const ExponentPair& pair1,
                                           const ExponentPair& pair2,
                                           const std::vector<int>& j_list, double T,
                                           std::size_t nt);

// Least-squares log-log fit of t -> ||S(t)u0||_p over [t_lo, t_hi].
struct DecaySlopeFit {
  double slope = 0.0;     // fitted d log norm / d log t
  double expected = 0.0;  // -2/gamma(p)
  double rel_err = 0.0;   // |slope - expected| / |expected|
  std::vector<double> t, norm;
};
DecaySlopeFit decay_slope_fit(const Field& u0, const Exponent& p, double t_lo, double t_hi,
                              std::size_t nt);

}  // namespace uniscale
