#pragma once
// Frequency-uniform decomposition: box operators cutting a field to the
// window psi(2^{-j} xi - k) on the lattice.  At scale j the boxes tile
// frequency space with cubes of side 2^j; translates with |k - l|_inf >= 2
// have disjoint supports, and the translates of one scale sum to 1.

#include <array>
#include <vector>

#include "uniscale/grid.hpp"
#include "uniscale/window.hpp"

namespace uniscale {

struct DecompIndex {
  int j = 0;
  std::array<int, 3> k{0, 0, 0};
};

// Valid scale window for a grid: coarse enough that a window straddles >= 8
// lattice points per axis, fine enough that scale-j cubes sit inside the
// Nyquist band.  Exact in integer arithmetic since N, P are powers of two.
struct ScaleRange {
  int j_min = 0;
  int j_max = 0;
  bool contains(int j) const { return j_min <= j && j <= j_max; }
};
ScaleRange scale_range(const GridSpec& g);
void require_valid_scale(const GridSpec& g, int j);  // hard error outside

// Sparse multiply of a spectral field by a window mask.
Field apply_mask(const BoxMask& mask, const Field& spec);

// Box operator.  Accepts either domain and returns the same domain.  The
// scale j must lie in scale_range(grid).
Field box_op(const WindowFamily& family, const Field& f, int j, const std::array<int, 3>& k);

// Same operator without the scale-range guard.  Callers must guarantee the
// result is meaningful (used for fields whose spectrum sits exactly on the
// window plateau, e.g. single lattice modes at very coarse scales).
Field box_op_raw(const WindowFamily& family, const Field& f, int j, const std::array<int, 3>& k);

// All k whose window meets a spectral coefficient with |a_m| > 1e-300, in
// lexicographic order.  Input may be in either domain.
std::vector<std::array<int, 3>> active_indices(const WindowFamily& family, const Field& f, int j);

// Sum of box_op over active indices (fixed order); reconstruction should
// reproduce f up to a few ulp.
Field reconstruct(const WindowFamily& family, const Field& f, int j);

// Max L2 norm of compositions box_{j,k} box_{j,l} f over sampled pairs with
// |k - l|_inf >= 2; exact support disjointness makes this vanish.
double almost_orthogonality_check(const WindowFamily& family, const Field& f, int j,
                                  std::size_t max_pairs = 64);

}  // namespace uniscale
