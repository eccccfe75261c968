#pragma once
// Empirical inequality checks.  Each check evaluates LHS / (scale-factor *
// RHS) per corpus entry over a parameter sweep and returns a RatioReport.
// None of the underlying constants are pinned; the pass criteria are
// structural: finite ratios, max ratio growing < 2x when the corpus doubles,
// and per-parameter maxima spreading < 4x (uniformity in j / b / m / pair).

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "uniscale/corpus.hpp"
#include "uniscale/norms.hpp"
#include "uniscale/report.hpp"
#include "uniscale/window.hpp"

namespace uniscale {

struct HarnessConfig {
  GridSpec grid{1, 2048, 64};
  std::uint64_t seed = 1;
  std::size_t corpus_count = 12;
  double spread_limit = 4.0;
  double growth_limit = 2.0;
};

// L^2 size of the window symbol and its L-th derivative, combined as
// ||psi||_2^{1-d/2L} (d ||h^(L)||_2 ||h||_2^{d-1})^{d/2L}; computed once by
// spectral differentiation on an auxiliary fine grid.  Scale-invariant: the
// 2^{j...} powers of the dilated symbol cancel exactly.
double multiplier_sobolev_factor(const WindowFamily& fam, int d, int L);

// ||box_{j,k} f||_r <= C * factor * ||f||_r with C uniform in (j, k).
RatioReport check_bernstein_multiplier(const WindowFamily& fam, const Corpus& corpus,
                                       const Exponent& r, int L,
                                       const std::vector<int>& j_list);

// ||f||_q <= C b^{d(1/p-1/q)} ||f||_p for spectra inside the ball B(xi0, b);
// uniformity swept over b, with xi0 varied per row.
RatioReport check_bernstein_pq(const Corpus& corpus, const Exponent& p, const Exponent& q,
                               const std::vector<double>& b_list,
                               const std::vector<std::array<double, 3>>& xi0_list);

// lambda^{min(0,t2,t1)} ||f|| <~ lambda^{d/p} ||f(lambda .)|| <~
// lambda^{max(0,t2,t1)} ||f|| in the unit-scale norm, lambda = 2^m.
RatioReport check_dilation_bounds(const WindowFamily& fam, const Corpus& corpus,
                                  const Exponent& p, const Exponent& q,
                                  const std::vector<int>& m_list);

// 2^{(j-i) mu0} ||f||_{p,q;j} <= C ||f||_{p,q;i} for i <= j <= 0,
// mu0 = min(0, d(1/q-1/p), d(1/q+1/p-1)).
RatioReport check_scale_comparison(const WindowFamily& fam, const Corpus& corpus,
                                   const Exponent& p, const Exponent& q,
                                   const std::vector<std::pair<int, int>>& ij_pairs);

// ||f||_{M0_{ptilde,q}} <= C 2^{jd(1/p+1/q-1/ptilde-1)} ||f||_{p,q;j}, j <= 0.
RatioReport check_embedding(const WindowFamily& fam, const Corpus& corpus, const Exponent& p,
                            const Exponent& q, const Exponent& p_tilde,
                            const std::vector<int>& j_list);

// ||box_{0,0} f||_inf <= C 2^{jd(1/p+1/q-1)} ||f||_{p,q;j}, j <= 0.
RatioReport check_lowfreq_lower_bound(const WindowFamily& fam, const Corpus& corpus,
                                      const Exponent& p, const Exponent& q,
                                      const std::vector<int>& j_list);

// For entries with nonzero mean: the weighted profile 2^{jd(1/p+1/q-1)}
// ||f||_{p,q;j} stays above a floor ~ |a_0| for j << 0.
RatioReport check_schwartz_lower_bound(const WindowFamily& fam, const Corpus& corpus,
                                       const Exponent& p, const Exponent& q);

// bilinear: ||f_j g_i||_{p,1;j} <= C 2^{id/p} ||f_j||_{p,1;j} ||g_i||_{p,1;i}
// for i <= j <= 0.  product: the induced splitting of f*g has its upper
// bound controlled by the product of the factors' upper bounds.  Pairs are
// entry self-products plus consecutive entry products.
enum class AlgebraPart : std::uint8_t { bilinear, product };
RatioReport check_algebra(const WindowFamily& fam, const Corpus& corpus, const Exponent& p,
                          const Rat& mu, const Exponent& r, AlgebraPart part);

// |<g, f>| <= C ||g||(profile; -mu, p', q', sup) * sum_j 2^{j mu}
// ||f_j||_{p,q;j} over a concrete splitting of f.
RatioReport check_duality_pairing(const WindowFamily& fam, const Corpus& corpus,
                                  const Exponent& p, const Exponent& q, const Rat& mu,
                                  const Exponent& r);

// ||f(lambda .)|| <= C lambda^{w - d/p} ||f|| for the profile/decomposition
// families; two-sided for the all-scale profile family.
RatioReport check_scaling_limit(const WindowFamily& fam, const Corpus& corpus,
                                const NormSpec& spec, const std::vector<int>& m_list);

// Registered battery over a deterministic corpus; every report carries the
// doubled-corpus stability result.  Order fixed by check id.
std::vector<RatioReport> run_all(const HarnessConfig& config);

}  // namespace uniscale
