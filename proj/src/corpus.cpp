#include "uniscale/corpus.hpp"

#include <cmath>
#include <stdexcept>

namespace uniscale {

const char* tag_name(CorpusTag t) {
  switch (t) {
    case CorpusTag::gaussian: return "gaussian";
    case CorpusTag::modulated_gaussian: return "modulated_gaussian";
    case CorpusTag::pure_mode: return "pure_mode";
    case CorpusTag::bump_train: return "bump_train";
    case CorpusTag::random_bandlimited: return "random_bandlimited";
    case CorpusTag::supercritical_truncated: return "supercritical_truncated";
  }
  return "?";
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr CorpusTag kTagCycle[6] = {
    CorpusTag::gaussian,          CorpusTag::modulated_gaussian,
    CorpusTag::pure_mode,         CorpusTag::bump_train,
    CorpusTag::random_bandlimited, CorpusTag::supercritical_truncated,
};

}  // namespace

CorpusRng::CorpusRng(std::uint64_t seed, std::uint64_t index)
    : state(mix64(seed * 0x9e3779b97f4a7c15ull + 0x100000001b3ull * (index + 1))) {}

std::uint64_t CorpusRng::next_u64() {
  state += 0x9e3779b97f4a7c15ull;
  return mix64(state);
}

double CorpusRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CorpusRng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double CorpusRng::gauss() {
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

long long CorpusRng::uniform_int(long long lo, long long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long long>(next_u64() % span);
}

void band_project(Field& spectral, double cut) {
  if (spectral.domain != Domain::spectral)
    throw validation_error("band_project expects a spectral field");
  const GridSpec& g = spectral.grid;
  const auto xi = lattice_xi(g);
  std::vector<int> n(static_cast<std::size_t>(g.d));
  for (std::size_t i = 0; i < spectral.v.size(); ++i) {
    g.decode(i, n.data());
    for (int ax = 0; ax < g.d; ++ax) {
      if (std::fabs(xi[static_cast<std::size_t>(n[static_cast<std::size_t>(ax)])]) > cut) {
        spectral.v[i] = 0.0;
        break;
      }
    }
  }
}

namespace {

// Gaussian bump A exp(-|x-c|^2 / (2 sigma^2)) sampled over the torus; the
// nearest-image distance keeps it smooth across the wrap.
void add_bump(Field& phys, double amp, double phase, const double* c, double sigma) {
  const GridSpec& g = phys.grid;
  const double L = g.edge();
  std::vector<int> n(static_cast<std::size_t>(g.d));
  const cplx rot = std::polar(amp, phase);
  for (std::size_t i = 0; i < phys.v.size(); ++i) {
    g.decode(i, n.data());
    double r2 = 0.0;
    for (int ax = 0; ax < g.d; ++ax) {
      double dxc = n[static_cast<std::size_t>(ax)] * g.dx() - c[ax];
      dxc -= L * std::nearbyint(dxc / L);
      r2 += dxc * dxc;
    }
    phys.v[i] += rot * std::exp(-0.5 * r2 / (sigma * sigma));
  }
}

void modulate(Field& phys, const long long* mode) {
  const GridSpec& g = phys.grid;
  std::vector<int> n(static_cast<std::size_t>(g.d));
  for (std::size_t i = 0; i < phys.v.size(); ++i) {
    g.decode(i, n.data());
    double arg = 0.0;
    for (int ax = 0; ax < g.d; ++ax) {
      const double x = n[static_cast<std::size_t>(ax)] * g.dx();
      arg += x * (static_cast<double>(mode[ax]) / g.P);
    }
    phys.v[i] *= std::polar(1.0, arg);
  }
}

}  // namespace

Field make_entry(const GridSpec& g, CorpusTag tag, std::uint64_t seed, std::size_t index) {
  if (g.N < 8 * g.P)
    throw validation_error("corpus needs N >= 8P so the band margin is nonempty");
  CorpusRng rng(seed ^ (0x5bd1e995u + static_cast<std::uint64_t>(tag)), index);
  const int margin_modes = g.N / 2 - 2 * g.P;  // |m| <= this keeps |xi| <= Xi - 2
  const double cut = static_cast<double>(g.nyquist()) - 2.0;
  const double L = g.edge();

  switch (tag) {
    case CorpusTag::gaussian: {
      Field phys(g, Domain::physical);
      double c[3] = {0, 0, 0};
      for (int ax = 0; ax < g.d; ++ax) c[ax] = rng.uniform(0.0, L);
      add_bump(phys, rng.uniform(0.5, 2.0), 0.0, c, rng.uniform(0.7, 1.6));
      Field spec = dft(phys);
      band_project(spec, cut);
      return spec;
    }
    case CorpusTag::modulated_gaussian: {
      Field phys(g, Domain::physical);
      double c[3] = {0, 0, 0};
      for (int ax = 0; ax < g.d; ++ax) c[ax] = rng.uniform(0.0, L);
      add_bump(phys, rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * M_PI), c,
               rng.uniform(0.7, 1.6));
      long long mode[3] = {0, 0, 0};
      const long long half = std::max(1, g.N / 4 - 2 * g.P);  // |xi0| <= Xi/2-ish
      for (int ax = 0; ax < g.d; ++ax) mode[ax] = rng.uniform_int(-half, half);
      modulate(phys, mode);
      Field spec = dft(phys);
      band_project(spec, cut);
      return spec;
    }
    case CorpusTag::pure_mode: {
      Field spec(g, Domain::spectral);
      std::array<int, 3> n{0, 0, 0};
      for (int ax = 0; ax < g.d; ++ax) {
        const long long m = rng.uniform_int(-margin_modes, margin_modes);
        n[static_cast<std::size_t>(ax)] = static_cast<int>(m >= 0 ? m : m + g.N);
      }
      spec.v[g.encode(n.data())] = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * M_PI));
      return spec;
    }
    case CorpusTag::bump_train: {
      Field phys(g, Domain::physical);
      const int n_bumps = static_cast<int>(rng.uniform_int(3, 6));
      for (int b = 0; b < n_bumps; ++b) {
        double c[3] = {0, 0, 0};
        for (int ax = 0; ax < g.d; ++ax) c[ax] = rng.uniform(0.0, L);
        add_bump(phys, rng.uniform(0.3, 1.5), rng.uniform(0.0, 2.0 * M_PI), c,
                 rng.uniform(0.6, 1.2));
      }
      Field spec = dft(phys);
      band_project(spec, cut);
      return spec;
    }
    case CorpusTag::random_bandlimited: {
      Field spec(g, Domain::spectral);
      const int band = std::min(margin_modes, 3 * g.P);
      const auto modes = signed_modes(g);
      std::vector<int> n(static_cast<std::size_t>(g.d));
      double norm = 1.0;
      for (int ax = 0; ax < g.d; ++ax) norm *= 2.0 * band + 1.0;
      const double amp = 1.0 / std::sqrt(norm);
      for (std::size_t i = 0; i < spec.v.size(); ++i) {
        g.decode(i, n.data());
        bool in = true;
        for (int ax = 0; ax < g.d; ++ax)
          if (std::abs(modes[static_cast<std::size_t>(n[static_cast<std::size_t>(ax)])]) > band)
            in = false;
        // draw unconditionally so the stream does not depend on the grid walk
        const double re = rng.gauss(), im = rng.gauss();
        if (in) spec.v[i] = amp * cplx(re, im);
      }
      return spec;
    }
    case CorpusTag::supercritical_truncated: {
      // Lacunary single-mode train at integer frequencies -11, -12, ..., -J
      // along the first axis, spectral amplitude 2^{|j|d} / (|j| ln^2 |j|).
      Field spec(g, Domain::spectral);
      const int j_deep = 11 + 2 + 2 * static_cast<int>(index % 5);
      const int J = std::min(j_deep, static_cast<int>(cut));
      for (int a = 11; a <= J; ++a) {
        const double lj = std::log(static_cast<double>(a));
        const double amp = std::ldexp(1.0, a * g.d) / (a * lj * lj);
        std::array<int, 3> n{0, 0, 0};
        n[0] = -a * g.P + g.N;  // xi_1 = -a
        spec.v[g.encode(n.data())] = amp;
      }
      return spec;
    }
  }
  throw validation_error("unknown corpus tag");
}

Corpus make_corpus(const CorpusConfig& cfg) {
  Corpus c;
  c.config = cfg;
  c.entries.reserve(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const CorpusTag tag = kTagCycle[i % 6];
    CorpusEntry e;
    e.tag = tag;
    e.name = std::string(tag_name(tag)) + "#" + std::to_string(i / 6);
    e.f = make_entry(cfg.grid, tag, cfg.seed, i);
    c.entries.push_back(std::move(e));
  }
  return c;
}

}  // namespace uniscale
