#pragma once
// Periodic grid on the torus [0, 2*pi*P)^d with N samples per axis.
//
// The frequency lattice is xi_m = m/P for integer modes m in [-N/2, N/2)^d,
// so the Nyquist edge is Xi = N/(2P) and the lattice refines as P grows.
// Spectral coefficients use the convention
//     a_m = N^{-d} sum_n f(x_n) e^{-i x_n . xi_m},
// which inverts exactly on the grid: f(x_n) = sum_m a_m e^{i x_n . xi_m},
// and satisfies the grid Plancherel identity ||f||_2^2 = L^d sum_m |a_m|^2
// with L = 2*pi*P.

#include <array>
#include <cstdint>
#include <vector>

#include "uniscale/common.hpp"
#include "uniscale/rational.hpp"

namespace uniscale {

struct GridSpec {
  int d = 1;       // dimension (1..3 supported; suites use 1 and 2)
  int N = 0;       // samples per axis, power of two
  int P = 0;       // period multiplier, power of two; torus edge L = 2*pi*P

  GridSpec() = default;
  GridSpec(int d_, int N_, int P_);

  std::size_t size() const;                  // N^d
  double dx() const;                         // 2*pi*P / N
  double edge() const;                       // L = 2*pi*P
  // Xi = N/(2P): the lattice covers |xi_i| <= Xi - 1/P.
  int nyquist() const { return N / (2 * P); }
  int log2N() const;
  int log2P() const;

  // Decode flat row-major index into per-axis sample indices n_i in [0, N).
  void decode(std::size_t flat, int* n) const;
  std::size_t encode(const int* n) const;

  // Signed mode for a raw axis index: n < N/2 ? n : n - N.
  int signed_mode(int n) const { return n < N / 2 ? n : n - N; }
  double xi_of_mode(int m) const { return static_cast<double>(m) / P; }

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.d == b.d && a.N == b.N && a.P == b.P;
  }
  friend bool operator!=(const GridSpec& a, const GridSpec& b) { return !(a == b); }
};

enum class Domain { physical, spectral };

struct Field {
  GridSpec grid;
  Domain domain = Domain::physical;
  std::vector<cplx> v;

  Field() = default;
  Field(const GridSpec& g, Domain dom) : grid(g), domain(dom), v(g.size()) {}

  static Field zeros(const GridSpec& g, Domain dom) { return Field(g, dom); }

  std::size_t size() const { return v.size(); }
  cplx& operator[](std::size_t i) { return v[i]; }
  const cplx& operator[](std::size_t i) const { return v[i]; }
};

// Forward / inverse transforms between the domain tags.  Throws
// validation_error if the tag is already on the target side.
Field dft(const Field& f);
Field idft(const Field& a);

// (sum |f(x_n)|^p dx^d)^{1/p}; p = inf gives the grid sup norm.
// Physical-domain input only.
double lp_norm(const Field& f, const Exponent& p);

// Riemann inner product <f, g> = sum f conj(g) dx^d on matching grids.
cplx pairing(const Field& f, const Field& g);

// Metadata-only dyadic dilation f |-> f(2^m .): the sample/coefficient array
// is reused verbatim and only the period multiplier changes, P' = P 2^{-m}.
// This realizes dilation with zero arithmetic error; lp_norm scales by
// exactly 2^{-m d/p}.  Errors if P' < 1 or the dilated grid violates N >= 4P.
Field dilate_dyadic(const Field& f, int m);

// Spectral multiplier (1 + |xi|^2)^{s/2}; returns a field in the same domain
// as the input.
Field bessel_multiplier(const Field& f, double s);

// --- low-level helpers shared by other modules ---

// In-place complex FFT, n a power of two; sign -1 forward, +1 inverse
// (unscaled).
void fft_inplace(cplx* a, std::size_t n, int sign);

// Per-axis tables for mode decoding (signed modes / lattice frequencies).
std::vector<int> signed_modes(const GridSpec& g);
std::vector<double> lattice_xi(const GridSpec& g);

}  // namespace uniscale
