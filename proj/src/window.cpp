#include "uniscale/window.hpp"

#include <cmath>

namespace uniscale {

namespace {

// Bump exp(-1/((3/4)^2 - t^2)) on (-3/4, 3/4).
double bump(double t) {
  const double r2 = 0.5625 - t * t;  // (3/4)^2 - t^2
  if (r2 <= 0.0) return 0.0;
  return std::exp(-1.0 / r2);
}

// Order-m smoothstep S(x) = c int_0^x t^m (1-t)^m dt / B(m+1,m+1); a
// polynomial with S(0)=0, S(1)=1 and m vanishing derivatives at both ends.
double smoothstep(int m, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // Reflect to x <= 1/2: keeps the alternating series below free of
  // cancellation for higher orders.
  if (x > 0.5) return 1.0 - smoothstep(m, 1.0 - x);
  // c = (2m+1)! / (m!)^2
  double c = 1.0;
  for (int k = 1; k <= m; ++k) c *= static_cast<double>(m + k) / k;
  c *= (2.0 * m + 1.0);
  // int_0^x t^m (1-t)^m dt expanded binomially
  double acc = 0.0, binom = 1.0;
  for (int k = 0; k <= m; ++k) {
    double term = binom * std::pow(x, m + 1 + k) / (m + 1 + k);
    acc += (k % 2 == 0) ? term : -term;
    binom = binom * (m - k) / (k + 1.0);
  }
  return c * acc;
}

// Spline pre-profile: 1 on the plateau, smoothstep flank on 1/4 < |t| < 3/4.
double spline_bump(int m, double t) {
  const double a = std::fabs(t);
  if (a <= 0.25) return 1.0;
  if (a >= 0.75) return 0.0;
  return smoothstep(m, (0.75 - a) * 2.0);
}

double raw_profile(ProfileKind kind, int order, double t) {
  return kind == ProfileKind::smooth_bump ? bump(t) : spline_bump(order, t);
}

}  // namespace

double WindowFamily::h(double t) const {
  if (std::fabs(t) >= 0.75) return 0.0;
  // Reduce to the nearest-integer offset so the normalizing denominator is
  // computed identically for every translate covering a given point.
  const double u = t - std::nearbyint(t);
  const double denom = raw_profile(kind, order, u - 1.0) + raw_profile(kind, order, u) +
                       raw_profile(kind, order, u + 1.0);
  return raw_profile(kind, order, t) / denom;
}

double WindowFamily::psi(const double* t, int d) const {
  double prod = 1.0;
  for (int i = 0; i < d; ++i) {
    const double hi = h(t[i]);
    if (hi == 0.0) return 0.0;
    prod *= hi;
  }
  return prod;
}

WindowFamily build_window() { return WindowFamily{ProfileKind::smooth_bump, 0}; }

WindowFamily build_window(int smoothness) {
  if (smoothness < 4) throw validation_error("window smoothness must be >= 4");
  return WindowFamily{ProfileKind::spline, smoothness};
}

double LowPassCutoff::radial(double t) const {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  if (kind == ProfileKind::spline) return smoothstep(order, 2.0 - t);
  // C^inf flank: e(2-t) / (e(2-t) + e(t-1)) with e(s) = exp(-1/s)
  const double a = std::exp(-1.0 / (2.0 - t));
  const double b = std::exp(-1.0 / (t - 1.0));
  return a / (a + b);
}

double LowPassCutoff::sigma(const double* xi, int d) const {
  double sup = 0.0;
  for (int i = 0; i < d; ++i) sup = std::max(sup, std::fabs(xi[i]));
  return radial(sup);
}

double LowPassCutoff::sigma_scaled(const double* xi, int d, int j) const {
  double sup = 0.0;
  for (int i = 0; i < d; ++i) sup = std::max(sup, std::fabs(xi[i]));
  return radial(std::ldexp(sup, -j));
}

LowPassCutoff build_lowpass(const WindowFamily& family) {
  return LowPassCutoff{family.kind, family.order};
}

BoxMask spectral_mask(const WindowFamily& family, const GridSpec& g, int j,
                      const std::array<int, 3>& k) {
  BoxMask mask;
  mask.d = g.d;
  const double scale = std::ldexp(1.0, j);  // 2^j
  for (int ax = 0; ax < g.d; ++ax) {
    auto& idx = mask.idx[static_cast<std::size_t>(ax)];
    auto& w = mask.w[static_cast<std::size_t>(ax)];
    const int kx = k[static_cast<std::size_t>(ax)];
    // support: xi in 2^j (k - 3/4, k + 3/4); modes m = P xi
    const double lo = scale * (kx - 0.75) * g.P;
    const double hi = scale * (kx + 0.75) * g.P;
    int mlo = static_cast<int>(std::ceil(lo));
    int mhi = static_cast<int>(std::floor(hi));
    mlo = std::max(mlo, -g.N / 2);
    mhi = std::min(mhi, g.N / 2 - 1);
    for (int m = mlo; m <= mhi; ++m) {
      const double t = std::ldexp(static_cast<double>(m) / g.P, -j) - kx;
      const double hv = family.h(t);
      if (hv != 0.0) {
        idx.push_back(m >= 0 ? m : m + g.N);  // raw axis index
        w.push_back(hv);
      }
    }
  }
  return mask;
}

}  // namespace uniscale
