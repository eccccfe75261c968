#pragma once
// Norms built from the window decomposition.
//
// Single-scale norm at scale j:  ||f||_{p,q;j} = l^q over boxes k of
// ||box_{j,k} f||_p.  The j-profile families weight these by 2^{j w} and
// combine over a scale window with l^r (or sup): "neg" uses j <= 0, "pos"
// j >= 0, "dot" all j.  The decomposition families measure a multi-scale
// splitting f = sum_j f_j by l^r over 2^{j w} ||f_j||_{p,1..q;j}; evaluating
// a concrete splitting yields an upper bound for the underlying infimum,
// which is never claimed to be attained.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uniscale/decomp.hpp"
#include "uniscale/grid.hpp"
#include "uniscale/rational.hpp"
#include "uniscale/window.hpp"

namespace uniscale {

enum class NormFamily : std::uint8_t {
  feichtinger_s,   // classical weighted <k>^s norm at unit scale
  single_scale_j,  // one fixed j
  frak_neg,        // profile over j <= 0
  frak_pos,        // profile over j >= 0
  frak_dot,        // profile over all j
  script_neg,      // decomposition bound over j <= 0
  script_pos,      // decomposition bound over j >= 0
  script_dot,      // decomposition bound over all j
};

NormFamily parse_family(const std::string& name);
const char* family_name(NormFamily f);

struct NormSpec {
  NormFamily family = NormFamily::frak_neg;
  Exponent p{2}, q{2}, r = Exponent::infinity();
  Rat w{0};   // weight exponent (s / rho / mu)
  int j = 0;  // only for single_scale_j
  std::optional<int> J_lo, J_hi;  // optional truncation of the scale window

  // Checks 1 <= p,q,r <= inf and, for the frak families, that w avoids the
  // identically-degenerate range.
  void validate(int d) const;
};

// l^q combination of non-negative terms in fixed order (Kahan).
double lq_combine(const std::vector<double>& xs, const Exponent& q);

// ||box_{j,k} f||_p from a spectral field; p = 2 goes through the lattice
// Plancherel identity without an inverse transform.
double box_norm(const WindowFamily& fam, const Field& spec, int j, const std::array<int, 3>& k,
                const Exponent& p);

// Single-scale norm; scale must be valid for the grid unless checked=false
// (callers then guarantee the spectrum sits on window plateaus).
double mj_norm(const WindowFamily& fam, const Field& f, int j, const Exponent& p,
               const Exponent& q, bool checked = true);

// Independent route for the same value: undo the scale by a metadata
// dilation and measure at unit scale, ||f||_{p,q;j} = 2^{-jd/p} ||f(2^{-j}.)||_{p,q;0}.
double mj_norm_oracle(const WindowFamily& fam, const Field& f, int j, const Exponent& p,
                      const Exponent& q);

// Weighted unit-scale norm with <k>^s = (1+|k|^2)^{s/2} weights.
double modulation_norm(const WindowFamily& fam, const Field& f, const Exponent& p,
                       const Exponent& q, double s);

// Scale window the spec selects on a grid (validity clipped, sign-restricted,
// then truncated); errors if the truncation leaves the valid range.
std::vector<int> norm_scales(const NormSpec& spec, const GridSpec& g);

// Profile families: value and the per-j weighted table behind it.
double frak_norm(const WindowFamily& fam, const Field& f, const NormSpec& spec);
std::vector<std::pair<int, double>> frak_vanishing_profile(const WindowFamily& fam, const Field& f,
                                                           const NormSpec& spec);

// Multi-scale splitting f = sum_j piece[j].
struct Decomposition {
  std::vector<int> j;
  std::vector<Field> piece;

  std::size_t size() const { return piece.size(); }
  // max-norm distance between sum of pieces and f, relative to sup |f|
  double sum_mismatch(const Field& f) const;
};

// Trivial splitting: everything at scale 0.
Decomposition trivial_decomposition(const Field& f);
// Telescoped low-pass splitting over the given descending scale list.
Decomposition lowpass_decomposition(const LowPassCutoff& cut, const Field& f,
                                    const std::vector<int>& scales);
Decomposition dilate_decomposition(const Decomposition& dec, int m);

// Upper bound for the decomposition families evaluated on one splitting.
double script_norm_upper(const WindowFamily& fam, const Decomposition& dec, const NormSpec& spec,
                         bool checked = true);

// --- space-time variants ---

struct Trajectory {
  std::vector<double> t;
  std::vector<Field> u;

  std::size_t size() const { return t.size(); }
  void validate() const;  // strictly increasing times, matching grids
};

// L^gamma in time (trapezoid on the trajectory nodes) of ||box_{j,k} u(t)||_p,
// then l^q over boxes.
double spacetime_w_norm(const WindowFamily& fam, const Trajectory& traj, int j,
                        const Exponent& gamma, const Exponent& p, const Exponent& q,
                        bool checked = true);

struct SpacetimeDecomposition {
  std::vector<int> j;
  std::vector<Trajectory> piece;
};

double script_spacetime_upper(const WindowFamily& fam, const SpacetimeDecomposition& dec,
                              const Exponent& gamma, const NormSpec& spec, bool checked = true);

// Intersection norm: max of the two component evaluations on one splitting.
double spacetime_vee_upper(const WindowFamily& fam, const SpacetimeDecomposition& dec,
                           const Exponent& gamma1, const NormSpec& spec1, const Exponent& gamma2,
                           const NormSpec& spec2, bool checked = true);

// --- regime classification (exact rational threshold logic) ---

enum class FrakRegime : std::uint8_t { degenerate, coincides_with_M0, nontrivial_new_space };
enum class ScriptRegime : std::uint8_t { zero_seminorm_on_schwartz, coincides_with_M0, nontrivial_banach };

const char* regime_name(FrakRegime r);
const char* regime_name(ScriptRegime r);

// Thresholds d(1/p + 1/q - 1) and d(1/q - 1/p) as exact rationals.
Rat threshold_sum(int d, const Exponent& p, const Exponent& q);
Rat threshold_diff(int d, const Exponent& p, const Exponent& q);

FrakRegime regime_classify(int d, const Exponent& p, const Exponent& q, const Rat& w,
                           NormFamily family);
ScriptRegime mu_regime_classify(int d, const Exponent& p, const Exponent& q, const Rat& w,
                                NormFamily family);
// w sits exactly on a classification threshold for these parameters.
bool on_regime_boundary(int d, const Exponent& p, const Exponent& q, const Rat& w,
                        NormFamily family);

struct RegionRow {
  Rat inv_p, inv_q;
  std::string regime;
  bool boundary = false;
};
// Rasterize the classifier over the unit square of (1/p, 1/q) with the given
// resolution (>= 8): rows for all (i/res, j/res), i.e. (res+1)^2 rows.
std::vector<RegionRow> region_table(int d, NormFamily family, const Rat& w, int resolution);

}  // namespace uniscale
