#pragma once
// Window profiles for the frequency-uniform decomposition.
//
// The 1-d profile h equals 1 on [-1/4, 1/4], vanishes outside (-3/4, 3/4),
// and its integer translates sum to 1 at every real point.  It is built by
// normalizing a bump against its own translates, h(t) = b(t) / sum_m b(t-m),
// which makes the partition identity exact in floating point (the same
// denominator is shared by every translate hitting a given point).  The
// multiplier for a unit cube is the tensor product psi(xi) = prod_i h(xi_i).

#include <array>
#include <cstdint>
#include <vector>

#include "uniscale/common.hpp"
#include "uniscale/grid.hpp"

namespace uniscale {

enum class ProfileKind : std::uint8_t {
  smooth_bump,  // exp(-1/((3/4)^2 - t^2)) normalized; infinitely smooth
  spline,       // plateau + polynomial smoothstep flanks; C^m for finite m
};

struct WindowFamily {
  ProfileKind kind = ProfileKind::smooth_bump;
  int order = 0;  // spline smoothness m (only for ProfileKind::spline)

  double h(double t) const;  // 1-d profile
  // psi evaluated at an already-shifted argument: prod_i h(t[i]).
  double psi(const double* t, int d) const;
};

// Default infinitely smooth window.
WindowFamily build_window();
// Finite-smoothness variant; requires smoothness >= 4.
WindowFamily build_window(int smoothness);

// Low-pass cutoff sigma: 1 on the unit sup-ball, supported in [-2,2]^d,
// shaped from the same profile machinery as its window family.
struct LowPassCutoff {
  ProfileKind kind = ProfileKind::smooth_bump;
  int order = 0;

  double radial(double t) const;                      // 1 for t<=1, 0 for t>=2
  double sigma(const double* xi, int d) const;        // radial(|xi|_inf)
  double sigma_scaled(const double* xi, int d, int j) const;  // sigma(2^{-j} xi)
};

LowPassCutoff build_lowpass(const WindowFamily& family);

// Sparse spectral multiplier for one window: per-axis lists of raw axis
// indices (0..N-1) and profile weights; the d-dimensional mask is their
// tensor product.  Frequencies outside the lattice are simply absent.
struct BoxMask {
  int d = 1;
  std::array<std::vector<int>, 3> idx;
  std::array<std::vector<double>, 3> w;

  std::size_t count() const {
    std::size_t c = 1;
    for (int i = 0; i < d; ++i) c *= idx[static_cast<std::size_t>(i)].size();
    return c;
  }
  bool empty() const {
    for (int i = 0; i < d; ++i)
      if (idx[static_cast<std::size_t>(i)].empty()) return true;
    return false;
  }
};

// Mask of psi(2^{-j} xi - k) on the grid's frequency lattice.
BoxMask spectral_mask(const WindowFamily& family, const GridSpec& g, int j,
                      const std::array<int, 3>& k);

}  // namespace uniscale
