#include "uniscale/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace uniscale {

ScaleRange scale_range(const GridSpec& g) {
  // j_min = ceil(log2(8/P)) = 3 - log2 P;  j_max = floor(log2(Xi/4)).
  ScaleRange r;
  r.j_min = 3 - g.log2P();
  r.j_max = g.log2N() - g.log2P() - 3;
  return r;
}

void require_valid_scale(const GridSpec& g, int j) {
  const ScaleRange r = scale_range(g);
  if (!r.contains(j))
    throw validation_error("scale j=" + std::to_string(j) + " outside valid range [" +
                           std::to_string(r.j_min) + ", " + std::to_string(r.j_max) +
                           "] for N=" + std::to_string(g.N) + " P=" + std::to_string(g.P));
}

Field apply_mask(const BoxMask& mask, const Field& spec) {
  if (spec.domain != Domain::spectral) throw validation_error("apply_mask expects spectral input");
  Field out(spec.grid, Domain::spectral);
  if (mask.empty()) return out;
  const GridSpec& g = spec.grid;
  const int d = g.d;
  const auto& i0 = mask.idx[0];
  const auto& w0 = mask.w[0];
  if (d == 1) {
    for (std::size_t a = 0; a < i0.size(); ++a) {
      const std::size_t f = static_cast<std::size_t>(i0[a]);
      out.v[f] = spec.v[f] * w0[a];
    }
    return out;
  }
  const auto& i1 = mask.idx[1];
  const auto& w1 = mask.w[1];
  if (d == 2) {
    for (std::size_t a = 0; a < i0.size(); ++a) {
      const std::size_t base = static_cast<std::size_t>(i0[a]) * g.N;
      for (std::size_t b = 0; b < i1.size(); ++b) {
        const std::size_t f = base + static_cast<std::size_t>(i1[b]);
        out.v[f] = spec.v[f] * (w0[a] * w1[b]);
      }
    }
    return out;
  }
  const auto& i2 = mask.idx[2];
  const auto& w2 = mask.w[2];
  for (std::size_t a = 0; a < i0.size(); ++a)
    for (std::size_t b = 0; b < i1.size(); ++b) {
      const std::size_t base = (static_cast<std::size_t>(i0[a]) * g.N + static_cast<std::size_t>(i1[b])) * g.N;
      const double wab = w0[a] * w1[b];
      for (std::size_t c = 0; c < i2.size(); ++c) {
        const std::size_t f = base + static_cast<std::size_t>(i2[c]);
        out.v[f] = spec.v[f] * (wab * w2[c]);
      }
    }
  return out;
}

namespace {

Field box_apply(const WindowFamily& family, const Field& f, int j, const std::array<int, 3>& k) {
  const bool was_physical = (f.domain == Domain::physical);
  const Field spec = was_physical ? dft(f) : f;
  const BoxMask mask = spectral_mask(family, f.grid, j, k);
  Field cut = apply_mask(mask, spec);
  return was_physical ? idft(cut) : cut;
}

}  // namespace

Field box_op(const WindowFamily& family, const Field& f, int j, const std::array<int, 3>& k) {
  require_valid_scale(f.grid, j);
  return box_apply(family, f, j, k);
}

Field box_op_raw(const WindowFamily& family, const Field& f, int j, const std::array<int, 3>& k) {
  return box_apply(family, f, j, k);
}

std::vector<std::array<int, 3>> active_indices(const WindowFamily& family, const Field& f, int j) {
  const Field spec = (f.domain == Domain::physical) ? dft(f) : f;
  const GridSpec& g = f.grid;
  const double scale = std::ldexp(1.0, -j);  // 2^{-j}
  std::set<std::array<int, 3>> found;
  std::vector<int> n(static_cast<std::size_t>(g.d));
  std::array<std::vector<int>, 3> cand;
  for (std::size_t i = 0; i < spec.v.size(); ++i) {
    if (std::abs(spec.v[i]) <= 1e-300) continue;
    g.decode(i, n.data());
    for (int ax = 0; ax < g.d; ++ax) {
      auto& c = cand[static_cast<std::size_t>(ax)];
      c.clear();
      const double t = scale * g.xi_of_mode(g.signed_mode(n[static_cast<std::size_t>(ax)]));
      const int klo = static_cast<int>(std::ceil(t - 0.75));
      const int khi = static_cast<int>(std::floor(t + 0.75));
      for (int k = klo; k <= khi; ++k)
        if (family.h(t - k) != 0.0) c.push_back(k);
    }
    if (g.d == 1) {
      for (int k0 : cand[0]) found.insert({k0, 0, 0});
    } else if (g.d == 2) {
      for (int k0 : cand[0])
        for (int k1 : cand[1]) found.insert({k0, k1, 0});
    } else {
      for (int k0 : cand[0])
        for (int k1 : cand[1])
          for (int k2 : cand[2]) found.insert({k0, k1, k2});
    }
  }
  return {found.begin(), found.end()};
}

Field reconstruct(const WindowFamily& family, const Field& f, int j) {
  require_valid_scale(f.grid, j);
  const auto ks = active_indices(family, f, j);
  Field acc(f.grid, f.domain);
  for (const auto& k : ks) {
    const Field piece = box_apply(family, f, j, k);
    for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += piece.v[i];
  }
  return acc;
}

double almost_orthogonality_check(const WindowFamily& family, const Field& f, int j,
                                  std::size_t max_pairs) {
  require_valid_scale(f.grid, j);
  const Field spec = (f.domain == Domain::physical) ? dft(f) : f;
  const auto ks = active_indices(family, spec, j);
  double worst = 0.0;
  std::size_t tried = 0;
  for (std::size_t a = 0; a < ks.size() && tried < max_pairs; ++a) {
    for (std::size_t b = a + 1; b < ks.size() && tried < max_pairs; ++b) {
      int sep = 0;
      for (int ax = 0; ax < f.grid.d; ++ax)
        sep = std::max(sep, std::abs(ks[a][static_cast<std::size_t>(ax)] -
                                     ks[b][static_cast<std::size_t>(ax)]));
      if (sep < 2) continue;
      ++tried;
      const Field inner = apply_mask(spectral_mask(family, f.grid, j, ks[b]), spec);
      const Field outer = apply_mask(spectral_mask(family, f.grid, j, ks[a]), inner);
      // grid Plancherel, fixed order
      kahan_acc acc;
      for (const auto& z : outer.v) acc.add(std::norm(z));
      const double l2 = std::sqrt(acc.sum() * std::pow(f.grid.edge(), f.grid.d));
      worst = std::max(worst, l2);
    }
  }
  return worst;
}

}  // namespace uniscale
