#include "uniscale/grid.hpp"

#include <algorithm>
#include <cmath>

namespace uniscale {

namespace {

bool is_pow2(int x) { return x > 0 && (x & (x - 1)) == 0; }

int ilog2(int x) {
  int k = 0;
  while ((1 << k) < x) ++k;
  return k;
}

}  // namespace

GridSpec::GridSpec(int d_, int N_, int P_) : d(d_), N(N_), P(P_) {
  if (d < 1 || d > 3) throw validation_error("grid dimension must be 1..3");
  if (!is_pow2(N)) throw validation_error("N must be a power of two");
  if (!is_pow2(P)) throw validation_error("P must be a power of two");
  if (N < 4 * P) throw validation_error("need N >= 4P so the lattice reaches |xi| = 2");
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(N);
  return s;
}

double GridSpec::dx() const { return 2.0 * M_PI * P / N; }
double GridSpec::edge() const { return 2.0 * M_PI * P; }
int GridSpec::log2N() const { return ilog2(N); }
int GridSpec::log2P() const { return ilog2(P); }

void GridSpec::decode(std::size_t flat, int* n) const {
  for (int i = d - 1; i >= 0; --i) {
    n[i] = static_cast<int>(flat % N);
    flat /= N;
  }
}

std::size_t GridSpec::encode(const int* n) const {
  std::size_t flat = 0;
  for (int i = 0; i < d; ++i) flat = flat * N + static_cast<std::size_t>(n[i]);
  return flat;
}

// Iterative radix-2 Cooley-Tukey.  Twiddles are read from a per-size table so
// repeated transforms of the same length share identical rounding; the table
// cache is thread-local, which keeps the routine lock-free and bit-stable for
// any worker count.
void fft_inplace(cplx* a, std::size_t n, int sign) {
  if (n == 0 || (n & (n - 1)) != 0) throw validation_error("fft length must be a power of two");
  if (n == 1) return;

  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  struct Table {
    std::size_t n = 0;
    std::vector<cplx> w;  // w[k] = exp(-2 pi i k / n), k < n/2
  };
  thread_local Table tab;
  if (tab.n != n) {
    tab.n = n;
    tab.w.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      double ang = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
      tab.w[k] = cplx(std::cos(ang), std::sin(ang));
    }
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx w = tab.w[k * step];
        if (sign > 0) w = std::conj(w);
        cplx u = a[i + k];
        cplx t = a[i + k + len / 2] * w;
        a[i + k] = u + t;
        a[i + k + len / 2] = u - t;
      }
    }
  }
}

namespace {

// Transform along every axis of the cube; sign -1 forward.  Lines along one
// axis are independent, so they are mapped in parallel.
void fft_nd(std::vector<cplx>& v, const GridSpec& g, int sign) {
  const std::size_t n = static_cast<std::size_t>(g.N);
  if (g.d == 1) {
    fft_inplace(v.data(), n, sign);
    return;
  }
  const std::size_t total = g.size();
  for (int axis = g.d - 1; axis >= 0; --axis) {
    // stride between consecutive elements of a line along `axis`
    std::size_t stride = 1;
    for (int i = g.d - 1; i > axis; --i) stride *= n;
    const std::size_t lines = total / n;
    parallel_for(lines, [&](std::size_t line) {
      // map line index to the base offset of its line
      std::size_t rem = line, base = 0;
      for (int i = g.d - 1; i >= 0; --i) {
        if (i == axis) continue;
        std::size_t axstride = 1;
        for (int t = g.d - 1; t > i; --t) axstride *= n;
        base += (rem % n) * axstride;
        rem /= n;
      }
      std::vector<cplx> buf(n);
      for (std::size_t k = 0; k < n; ++k) buf[k] = v[base + k * stride];
      fft_inplace(buf.data(), n, sign);
      for (std::size_t k = 0; k < n; ++k) v[base + k * stride] = buf[k];
    });
  }
}

}  // namespace

Field dft(const Field& f) {
  if (f.domain != Domain::physical) throw validation_error("dft expects a physical-domain field");
  Field a(f.grid, Domain::spectral);
  a.v = f.v;
  fft_nd(a.v, f.grid, -1);
  const double scale = 1.0 / static_cast<double>(f.grid.size());
  for (auto& z : a.v) z *= scale;
  return a;
}

Field idft(const Field& a) {
  if (a.domain != Domain::spectral) throw validation_error("idft expects a spectral-domain field");
  Field f(a.grid, Domain::physical);
  f.v = a.v;
  fft_nd(f.v, a.grid, +1);
  return f;
}

double lp_norm(const Field& f, const Exponent& p) {
  if (f.domain != Domain::physical) throw validation_error("lp_norm expects a physical-domain field");
  if (!p.is_inf() && p.r <= Rat(0)) throw validation_error("lp_norm needs p > 0 or p = inf");
  if (p.is_inf()) {
    double m = 0.0;
    for (const auto& z : f.v) m = std::max(m, std::abs(z));
    return m;
  }
  const double pd = p.value();
  const double cell = std::pow(f.grid.dx(), f.grid.d);
  kahan_acc acc;
  if (p.r == Rat(2)) {
    for (const auto& z : f.v) acc.add(std::norm(z));
  } else if (p.r == Rat(1)) {
    for (const auto& z : f.v) acc.add(std::abs(z));
  } else {
    for (const auto& z : f.v) acc.add(std::pow(std::abs(z), pd));
  }
  return std::pow(acc.sum() * cell, 1.0 / pd);
}

cplx pairing(const Field& f, const Field& g) {
  if (f.domain != Domain::physical || g.domain != Domain::physical)
    throw validation_error("pairing expects physical-domain fields");
  if (f.grid != g.grid) throw validation_error("pairing: grid mismatch");
  kahan_acc re, im;
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    cplx t = f.v[i] * std::conj(g.v[i]);
    re.add(t.real());
    im.add(t.imag());
  }
  const double cell = std::pow(f.grid.dx(), f.grid.d);
  return cplx(re.sum() * cell, im.sum() * cell);
}

Field dilate_dyadic(const Field& f, int m) {
  int newP;
  if (m >= 0) {
    if (f.grid.log2P() < m) throw validation_error("dilate_dyadic: P 2^{-m} drops below 1");
    newP = f.grid.P >> m;
  } else {
    long long p2 = static_cast<long long>(f.grid.P) << (-m);
    if (4 * p2 > f.grid.N) throw validation_error("dilate_dyadic: dilated grid violates N >= 4P");
    newP = static_cast<int>(p2);
  }
  Field out(GridSpec(f.grid.d, f.grid.N, newP), f.domain);
  out.v = f.v;
  return out;
}

Field bessel_multiplier(const Field& f, double s) {
  Field a = (f.domain == Domain::spectral) ? f : dft(f);
  const auto xi = lattice_xi(f.grid);
  const GridSpec& g = f.grid;
  std::vector<int> n(static_cast<std::size_t>(g.d));
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    g.decode(i, n.data());
    double x2 = 0.0;
    for (int ax = 0; ax < g.d; ++ax) {
      double x = xi[static_cast<std::size_t>(n[ax])];
      x2 += x * x;
    }
    a.v[i] *= std::pow(1.0 + x2, 0.5 * s);
  }
  return (f.domain == Domain::spectral) ? a : idft(a);
}

std::vector<int> signed_modes(const GridSpec& g) {
  std::vector<int> m(static_cast<std::size_t>(g.N));
  for (int n = 0; n < g.N; ++n) m[static_cast<std::size_t>(n)] = g.signed_mode(n);
  return m;
}

std::vector<double> lattice_xi(const GridSpec& g) {
  std::vector<double> xi(static_cast<std::size_t>(g.N));
  for (int n = 0; n < g.N; ++n)
    xi[static_cast<std::size_t>(n)] = g.xi_of_mode(g.signed_mode(n));
  return xi;
}

}  // namespace uniscale
