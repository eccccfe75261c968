#pragma once
// Deterministic test-function corpus.  Every entry is a pure function of
// (seed, index, grid): doubling the corpus size keeps the existing prefix
// bit-identical, which is what the stability checks rely on.  Spectra are
// kept at least two unit cubes inside the Nyquist edge so that window sums
// never see aliased mass.

#include <cstdint>
#include <string>
#include <vector>

#include "uniscale/grid.hpp"

namespace uniscale {

enum class CorpusTag : std::uint8_t {
  gaussian,
  modulated_gaussian,
  pure_mode,
  bump_train,
  random_bandlimited,
  supercritical_truncated,
};

const char* tag_name(CorpusTag t);

struct CorpusEntry {
  CorpusTag tag;
  std::string name;  // "<tag>#<index>"
  Field f;           // spectral domain, band-limited to |xi|_inf <= Xi - 2
};

struct CorpusConfig {
  GridSpec grid;
  std::uint64_t seed = 1;
  std::size_t count = 12;
};

struct Corpus {
  CorpusConfig config;
  std::vector<CorpusEntry> entries;
};

// Counter-based generator stream: the n-th draw depends only on (seed, n).
struct CorpusRng {
  std::uint64_t state;
  explicit CorpusRng(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next_u64();
  double uniform();              // [0, 1)
  double uniform(double a, double b);
  double gauss();                // standard normal (Box-Muller)
  long long uniform_int(long long lo, long long hi);  // inclusive
};

// Entry index i gets tag cycle(i) and its own rng stream; requires the grid
// to keep a usable band, N >= 8P.
Field make_entry(const GridSpec& g, CorpusTag tag, std::uint64_t seed, std::size_t index);
Corpus make_corpus(const CorpusConfig& cfg);

// Hard spectral truncation to |xi|_inf <= cut (in frequency units).
void band_project(Field& spectral, double cut);

}  // namespace uniscale
