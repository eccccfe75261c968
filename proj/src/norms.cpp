#include "uniscale/norms.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace uniscale {

NormFamily parse_family(const std::string& name) {
  if (name == "feichtinger_s") return NormFamily::feichtinger_s;
  if (name == "single_scale_j") return NormFamily::single_scale_j;
  if (name == "frak_neg") return NormFamily::frak_neg;
  if (name == "frak_pos") return NormFamily::frak_pos;
  if (name == "frak_dot") return NormFamily::frak_dot;
  if (name == "script_neg") return NormFamily::script_neg;
  if (name == "script_pos") return NormFamily::script_pos;
  if (name == "script_dot") return NormFamily::script_dot;
  throw validation_error("unknown norm family '" + name + "'");
}

const char* family_name(NormFamily f) {
  switch (f) {
    case NormFamily::feichtinger_s: return "feichtinger_s";
    case NormFamily::single_scale_j: return "single_scale_j";
    case NormFamily::frak_neg: return "frak_neg";
    case NormFamily::frak_pos: return "frak_pos";
    case NormFamily::frak_dot: return "frak_dot";
    case NormFamily::script_neg: return "script_neg";
    case NormFamily::script_pos: return "script_pos";
    case NormFamily::script_dot: return "script_dot";
  }
  return "?";
}

void NormSpec::validate(int d) const {
  auto at_least_one = [](const Exponent& e, const char* name) {
    if (!e.is_inf() && e.r < Rat(1))
      throw validation_error(std::string(name) + " must lie in [1, inf], got " + to_string(e));
  };
  at_least_one(p, "p");
  at_least_one(q, "q");
  at_least_one(r, "r");
  const Rat t1 = threshold_sum(d, p, q);
  switch (family) {
    case NormFamily::frak_neg:
      if (w < t1)
        throw validation_error("weight " + to_string(w) + " below d(1/p+1/q-1) = " + to_string(t1) +
                               ": profile norm degenerates on this side");
      break;
    case NormFamily::frak_pos:
      if (w > Rat(0))
        throw validation_error("weight " + to_string(w) + " positive: profile norm degenerates for j >= 0");
      break;
    case NormFamily::frak_dot:
      if (w < t1 || w > Rat(0))
        throw validation_error("weight " + to_string(w) + " outside [" + to_string(t1) +
                               ", 0] required for the two-sided profile");
      break;
    default:
      break;
  }
}

double lq_combine(const std::vector<double>& xs, const Exponent& q) {
  if (q.is_inf()) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, x);
    return m;
  }
  const double qe = q.value();
  kahan_acc acc;
  if (q.r == Rat(1)) {
    for (double x : xs) acc.add(x);
    return acc.sum();
  }
  if (q.r == Rat(2)) {
    for (double x : xs) acc.add(x * x);
    return std::sqrt(acc.sum());
  }
  for (double x : xs) acc.add(std::pow(x, qe));
  return std::pow(acc.sum(), 1.0 / qe);
}

double box_norm(const WindowFamily& fam, const Field& spec, int j, const std::array<int, 3>& k,
                const Exponent& p) {
  if (spec.domain != Domain::spectral) throw validation_error("box_norm expects spectral input");
  const BoxMask mask = spectral_mask(fam, spec.grid, j, k);
  if (mask.empty()) return 0.0;
  if (!p.is_inf() && p.r == Rat(2)) {
    // Plancherel on the mask support; no inverse transform needed.
    const GridSpec& g = spec.grid;
    kahan_acc acc;
    const auto& i0 = mask.idx[0];
    const auto& w0 = mask.w[0];
    if (g.d == 1) {
      for (std::size_t a = 0; a < i0.size(); ++a)
        acc.add(std::norm(spec.v[static_cast<std::size_t>(i0[a])] * w0[a]));
    } else if (g.d == 2) {
      for (std::size_t a = 0; a < i0.size(); ++a) {
        const std::size_t base = static_cast<std::size_t>(i0[a]) * g.N;
        for (std::size_t b = 0; b < mask.idx[1].size(); ++b)
          acc.add(std::norm(spec.v[base + static_cast<std::size_t>(mask.idx[1][b])] *
                            (w0[a] * mask.w[1][b])));
      }
    } else {
      for (std::size_t a = 0; a < i0.size(); ++a)
        for (std::size_t b = 0; b < mask.idx[1].size(); ++b) {
          const std::size_t base =
              (static_cast<std::size_t>(i0[a]) * g.N + static_cast<std::size_t>(mask.idx[1][b])) * g.N;
          const double wab = w0[a] * mask.w[1][b];
          for (std::size_t c = 0; c < mask.idx[2].size(); ++c)
            acc.add(std::norm(spec.v[base + static_cast<std::size_t>(mask.idx[2][c])] *
                              (wab * mask.w[2][c])));
        }
    }
    return std::sqrt(acc.sum() * std::pow(g.edge(), g.d));
  }
  return lp_norm(idft(apply_mask(mask, spec)), p);
}

double mj_norm(const WindowFamily& fam, const Field& f, int j, const Exponent& p,
               const Exponent& q, bool checked) {
  if (checked) require_valid_scale(f.grid, j);
  const Field spec = (f.domain == Domain::physical) ? dft(f) : f;
  const auto ks = active_indices(fam, spec, j);
  std::vector<double> norms(ks.size(), 0.0);
  parallel_for(ks.size(), [&](std::size_t i) { norms[i] = box_norm(fam, spec, j, ks[i], p); });
  return lq_combine(norms, q);
}

double mj_norm_oracle(const WindowFamily& fam, const Field& f, int j, const Exponent& p,
                      const Exponent& q) {
  // ||f||_{p,q;j} = 2^{-jd/p} ||f(2^{-j}.)||_{p,q;0}: the dilation is pure
  // metadata, so the two routes share no mask or norm arithmetic at scale j.
  const Field fd = dilate_dyadic(f, -j);
  const double scale = std::pow(2.0, -static_cast<double>(j) * f.grid.d * p.reciprocal().value());
  return scale * mj_norm(fam, fd, 0, p, q);
}

double modulation_norm(const WindowFamily& fam, const Field& f, const Exponent& p,
                       const Exponent& q, double s) {
  require_valid_scale(f.grid, 0);
  const Field spec = (f.domain == Domain::physical) ? dft(f) : f;
  const auto ks = active_indices(fam, spec, 0);
  std::vector<double> norms(ks.size(), 0.0);
  parallel_for(ks.size(), [&](std::size_t i) {
    double k2 = 0.0;
    for (int ax = 0; ax < f.grid.d; ++ax) {
      const double kx = ks[i][static_cast<std::size_t>(ax)];
      k2 += kx * kx;
    }
    norms[i] = std::pow(1.0 + k2, 0.5 * s) * box_norm(fam, spec, 0, ks[i], p);
  });
  return lq_combine(norms, q);
}

std::vector<int> norm_scales(const NormSpec& spec, const GridSpec& g) {
  const ScaleRange r = scale_range(g);
  if (spec.family == NormFamily::feichtinger_s) {
    require_valid_scale(g, 0);
    return {0};
  }
  if (spec.family == NormFamily::single_scale_j) {
    require_valid_scale(g, spec.j);
    return {spec.j};
  }
  int lo = r.j_min, hi = r.j_max;
  switch (spec.family) {
    case NormFamily::frak_neg:
    case NormFamily::script_neg:
      hi = std::min(hi, 0);
      break;
    case NormFamily::frak_pos:
    case NormFamily::script_pos:
      lo = std::max(lo, 0);
      break;
    default:
      break;
  }
  if (spec.J_lo) {
    if (*spec.J_lo < lo)
      throw validation_error("J_lo=" + std::to_string(*spec.J_lo) +
                             " leaves the valid scale window (min " + std::to_string(lo) + ")");
    lo = *spec.J_lo;
  }
  if (spec.J_hi) {
    if (*spec.J_hi > hi)
      throw validation_error("J_hi=" + std::to_string(*spec.J_hi) +
                             " leaves the valid scale window (max " + std::to_string(hi) + ")");
    hi = *spec.J_hi;
  }
  if (lo > hi) throw validation_error("empty scale window for " + std::string(family_name(spec.family)));
  std::vector<int> out;
  for (int j = lo; j <= hi; ++j) out.push_back(j);
  return out;
}

namespace {

std::vector<std::pair<int, double>> weighted_profile(const WindowFamily& fam, const Field& f,
                                                     const NormSpec& spec) {
  spec.validate(f.grid.d);
  const auto js = norm_scales(spec, f.grid);
  const Field sp = (f.domain == Domain::physical) ? dft(f) : f;
  std::vector<std::pair<int, double>> rows;
  rows.reserve(js.size());
  for (int j : js) {
    const double weight = std::pow(2.0, static_cast<double>(j) * spec.w.value());
    rows.emplace_back(j, weight * mj_norm(fam, sp, j, spec.p, spec.q));
  }
  return rows;
}

}  // namespace

double frak_norm(const WindowFamily& fam, const Field& f, const NormSpec& spec) {
  spec.validate(f.grid.d);
  switch (spec.family) {
    case NormFamily::frak_neg:
    case NormFamily::frak_pos:
    case NormFamily::frak_dot:
      break;
    case NormFamily::feichtinger_s:
      return modulation_norm(fam, f, spec.p, spec.q, spec.w.value());
    case NormFamily::single_scale_j:
      return mj_norm(fam, f, spec.j, spec.p, spec.q);
    default:
      throw validation_error("frak_norm: decomposition families need script_norm_upper");
  }
  const auto rows = weighted_profile(fam, f, spec);
  std::vector<double> vals;
  vals.reserve(rows.size());
  for (const auto& r : rows) vals.push_back(r.second);
  return lq_combine(vals, spec.r);
}

std::vector<std::pair<int, double>> frak_vanishing_profile(const WindowFamily& fam, const Field& f,
                                                           const NormSpec& spec) {
  return weighted_profile(fam, f, spec);
}

double Decomposition::sum_mismatch(const Field& f) const {
  Field acc(f.grid, f.domain);
  for (const auto& p : piece) {
    if (p.grid != f.grid || p.domain != f.domain)
      throw validation_error("decomposition pieces must share the target's grid and domain");
    for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += p.v[i];
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < acc.v.size(); ++i) {
    num = std::max(num, std::abs(acc.v[i] - f.v[i]));
    den = std::max(den, std::abs(f.v[i]));
  }
  return den > 0.0 ? num / den : num;
}

Decomposition trivial_decomposition(const Field& f) {
  Decomposition dec;
  dec.j = {0};
  dec.piece = {f};
  return dec;
}

Decomposition lowpass_decomposition(const LowPassCutoff& cut, const Field& f,
                                    const std::vector<int>& scales) {
  if (scales.empty()) throw validation_error("lowpass_decomposition: empty scale list");
  std::vector<int> js = scales;
  std::sort(js.begin(), js.end(), std::greater<int>());
  js.erase(std::unique(js.begin(), js.end()), js.end());

  const bool physical = (f.domain == Domain::physical);
  const Field spec = physical ? dft(f) : f;
  const GridSpec& g = f.grid;
  const auto xi = lattice_xi(g);

  // Multiplier values sigma_j at every mode, for the listed cut scales.
  auto sigma_at = [&](int j, std::size_t flat, std::vector<int>& n) {
    g.decode(flat, n.data());
    double sup = 0.0;
    for (int ax = 0; ax < g.d; ++ax)
      sup = std::max(sup, std::fabs(xi[static_cast<std::size_t>(n[static_cast<std::size_t>(ax)])]));
    return cut.radial(std::ldexp(sup, -j));
  };

  Decomposition dec;
  dec.j.assign(js.begin(), js.end());
  dec.piece.reserve(js.size());
  // Telescoping cutoffs at the listed scales: the top piece keeps everything
  // the second cutoff rejects, interior pieces take successive differences,
  // and the bottom piece keeps its whole low-pass ball.  The differences
  // cancel exactly, so the pieces sum back to f within rounding.
  std::vector<int> n(static_cast<std::size_t>(g.d));
  for (std::size_t s = 0; s < js.size(); ++s) {
    Field piece(g, Domain::spectral);
    for (std::size_t i = 0; i < spec.v.size(); ++i) {
      double mult;
      if (js.size() == 1) {
        mult = 1.0;
      } else if (s == 0) {
        mult = 1.0 - sigma_at(js[1], i, n);
      } else if (s + 1 == js.size()) {
        mult = sigma_at(js[s], i, n);
      } else {
        mult = sigma_at(js[s], i, n) - sigma_at(js[s + 1], i, n);
      }
      piece.v[i] = spec.v[i] * mult;
    }
    dec.piece.push_back(physical ? idft(piece) : piece);
  }
  return dec;
}

Decomposition dilate_decomposition(const Decomposition& dec, int m) {
  Decomposition out;
  out.j.reserve(dec.j.size());
  out.piece.reserve(dec.piece.size());
  for (std::size_t i = 0; i < dec.piece.size(); ++i) {
    out.j.push_back(dec.j[i] + m);
    out.piece.push_back(dilate_dyadic(dec.piece[i], m));
  }
  return out;
}

double script_norm_upper(const WindowFamily& fam, const Decomposition& dec, const NormSpec& spec,
                         bool checked) {
  spec.validate(dec.piece.empty() ? 1 : dec.piece.front().grid.d);
  switch (spec.family) {
    case NormFamily::script_neg:
    case NormFamily::script_pos:
    case NormFamily::script_dot:
      break;
    default:
      throw validation_error("script_norm_upper needs a decomposition family");
  }
  std::vector<double> vals;
  vals.reserve(dec.piece.size());
  for (std::size_t i = 0; i < dec.piece.size(); ++i) {
    const int j = dec.j[i];
    if (spec.family == NormFamily::script_neg && j > 0)
      throw validation_error("piece scale j > 0 in a j <= 0 family");
    if (spec.family == NormFamily::script_pos && j < 0)
      throw validation_error("piece scale j < 0 in a j >= 0 family");
    if (spec.J_lo && j < *spec.J_lo) throw validation_error("piece scale below truncation");
    if (spec.J_hi && j > *spec.J_hi) throw validation_error("piece scale above truncation");
    const double weight = std::pow(2.0, static_cast<double>(j) * spec.w.value());
    vals.push_back(weight * mj_norm(fam, dec.piece[i], j, spec.p, spec.q, checked));
  }
  return lq_combine(vals, spec.r);
}

void Trajectory::validate() const {
  if (t.empty() || t.size() != u.size()) throw validation_error("trajectory: empty or ragged");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw validation_error("trajectory times must strictly increase");
  for (std::size_t i = 1; i < u.size(); ++i)
    if (u[i].grid != u[0].grid) throw validation_error("trajectory grids differ");
}

namespace {

double time_combine(const std::vector<double>& g, const std::vector<double>& t,
                    const Exponent& gamma) {
  if (gamma.is_inf()) {
    double m = 0.0;
    for (double x : g) m = std::max(m, x);
    return m;
  }
  if (g.size() < 2) throw validation_error("finite-gamma time norm needs >= 2 nodes");
  const double ge = gamma.value();
  kahan_acc acc;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double w;
    if (i == 0)
      w = 0.5 * (t[1] - t[0]);
    else if (i + 1 == g.size())
      w = 0.5 * (t[i] - t[i - 1]);
    else
      w = 0.5 * (t[i + 1] - t[i - 1]);
    acc.add(w * std::pow(g[i], ge));
  }
  return std::pow(acc.sum(), 1.0 / ge);
}

}  // namespace

double spacetime_w_norm(const WindowFamily& fam, const Trajectory& traj, int j,
                        const Exponent& gamma, const Exponent& p, const Exponent& q, bool checked) {
  traj.validate();
  if (checked) require_valid_scale(traj.u[0].grid, j);
  std::vector<Field> specs;
  specs.reserve(traj.u.size());
  for (const auto& f : traj.u) specs.push_back(f.domain == Domain::physical ? dft(f) : f);

  std::set<std::array<int, 3>> kset;
  for (const auto& sp : specs)
    for (const auto& k : active_indices(fam, sp, j)) kset.insert(k);
  const std::vector<std::array<int, 3>> ks(kset.begin(), kset.end());

  std::vector<double> per_k(ks.size(), 0.0);
  parallel_for(ks.size(), [&](std::size_t i) {
    std::vector<double> series(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s)
      series[s] = box_norm(fam, specs[s], j, ks[i], p);
    per_k[i] = time_combine(series, traj.t, gamma);
  });
  return lq_combine(per_k, q);
}

double script_spacetime_upper(const WindowFamily& fam, const SpacetimeDecomposition& dec,
                              const Exponent& gamma, const NormSpec& spec, bool checked) {
  std::vector<double> vals;
  vals.reserve(dec.piece.size());
  for (std::size_t i = 0; i < dec.piece.size(); ++i) {
    const int j = dec.j[i];
    const double weight = std::pow(2.0, static_cast<double>(j) * spec.w.value());
    vals.push_back(weight * spacetime_w_norm(fam, dec.piece[i], j, gamma, spec.p, spec.q, checked));
  }
  return lq_combine(vals, spec.r);
}

double spacetime_vee_upper(const WindowFamily& fam, const SpacetimeDecomposition& dec,
                           const Exponent& gamma1, const NormSpec& spec1, const Exponent& gamma2,
                           const NormSpec& spec2, bool checked) {
  const double a = script_spacetime_upper(fam, dec, gamma1, spec1, checked);
  const double b = script_spacetime_upper(fam, dec, gamma2, spec2, checked);
  return std::max(a, b);
}

// --- regime classification ---

const char* regime_name(FrakRegime r) {
  switch (r) {
    case FrakRegime::degenerate: return "degenerate";
    case FrakRegime::coincides_with_M0: return "coincides_with_M0";
    case FrakRegime::nontrivial_new_space: return "nontrivial_new_space";
  }
  return "?";
}

const char* regime_name(ScriptRegime r) {
  switch (r) {
    case ScriptRegime::zero_seminorm_on_schwartz: return "zero_seminorm_on_schwartz";
    case ScriptRegime::coincides_with_M0: return "coincides_with_M0";
    case ScriptRegime::nontrivial_banach: return "nontrivial_banach";
  }
  return "?";
}

Rat threshold_sum(int d, const Exponent& p, const Exponent& q) {
  return Rat(d) * (p.reciprocal() + q.reciprocal() - Rat(1));
}

Rat threshold_diff(int d, const Exponent& p, const Exponent& q) {
  return Rat(d) * (q.reciprocal() - p.reciprocal());
}

FrakRegime regime_classify(int d, const Exponent& p, const Exponent& q, const Rat& w,
                           NormFamily family) {
  const Rat t1 = threshold_sum(d, p, q);
  const Rat t2 = threshold_diff(d, p, q);
  const Rat zero(0);
  const Rat top = rat_max(rat_max(t1, t2), zero);
  const Rat bot = rat_min(rat_min(t1, t2), zero);
  switch (family) {
    case NormFamily::frak_neg:
      if (w < t1) return FrakRegime::degenerate;
      if (w >= top) return FrakRegime::coincides_with_M0;
      return FrakRegime::nontrivial_new_space;
    case NormFamily::frak_pos:
      if (w > zero) return FrakRegime::degenerate;
      if (w <= bot) return FrakRegime::coincides_with_M0;
      return FrakRegime::nontrivial_new_space;
    case NormFamily::frak_dot:
      if (w < t1 || w > zero) return FrakRegime::degenerate;
      if (w >= top && w <= bot) return FrakRegime::coincides_with_M0;
      return FrakRegime::nontrivial_new_space;
    default:
      throw validation_error("regime_classify expects a profile family");
  }
}

ScriptRegime mu_regime_classify(int d, const Exponent& p, const Exponent& q, const Rat& w,
                                NormFamily family) {
  const Rat t1 = threshold_sum(d, p, q);
  const Rat t2 = threshold_diff(d, p, q);
  const Rat zero(0);
  const Rat top = rat_max(rat_max(t1, t2), zero);
  const Rat bot = rat_min(rat_min(t1, t2), zero);
  switch (family) {
    case NormFamily::script_neg:
      if (w > t1) return ScriptRegime::zero_seminorm_on_schwartz;
      if (w <= bot) return ScriptRegime::coincides_with_M0;
      return ScriptRegime::nontrivial_banach;
    case NormFamily::script_pos:
      if (w < zero) return ScriptRegime::zero_seminorm_on_schwartz;
      if (w >= top) return ScriptRegime::coincides_with_M0;
      return ScriptRegime::nontrivial_banach;
    case NormFamily::script_dot:
      if (w < zero || w > t1) return ScriptRegime::zero_seminorm_on_schwartz;
      if (w <= bot && w >= top) return ScriptRegime::coincides_with_M0;
      return ScriptRegime::nontrivial_banach;
    default:
      throw validation_error("mu_regime_classify expects a decomposition family");
  }
}

bool on_regime_boundary(int d, const Exponent& p, const Exponent& q, const Rat& w,
                        NormFamily family) {
  const Rat t1 = threshold_sum(d, p, q);
  const Rat t2 = threshold_diff(d, p, q);
  const Rat zero(0);
  const Rat top = rat_max(rat_max(t1, t2), zero);
  const Rat bot = rat_min(rat_min(t1, t2), zero);
  switch (family) {
    case NormFamily::frak_neg:
    case NormFamily::script_neg:
      return w == t1 || w == top || w == bot;
    case NormFamily::frak_pos:
    case NormFamily::script_pos:
      return w == zero || w == top || w == bot;
    case NormFamily::frak_dot:
    case NormFamily::script_dot:
      return w == zero || w == t1 || w == top || w == bot;
    default:
      throw validation_error("on_regime_boundary: unsupported family");
  }
}

std::vector<RegionRow> region_table(int d, NormFamily family, const Rat& w, int resolution) {
  if (resolution < 8) throw validation_error("region table resolution must be >= 8");
  const bool script = family == NormFamily::script_neg || family == NormFamily::script_pos ||
                      family == NormFamily::script_dot;
  if (!script && family != NormFamily::frak_neg && family != NormFamily::frak_pos &&
      family != NormFamily::frak_dot)
    throw validation_error("region table needs a profile or decomposition family");
  std::vector<RegionRow> rows;
  rows.reserve(static_cast<std::size_t>((resolution + 1) * (resolution + 1)));
  for (int i = 0; i <= resolution; ++i) {
    for (int jj = 0; jj <= resolution; ++jj) {
      const Exponent p = (i == 0) ? Exponent::infinity() : Exponent(Rat(resolution, i));
      const Exponent q = (jj == 0) ? Exponent::infinity() : Exponent(Rat(resolution, jj));
      RegionRow row;
      row.inv_p = Rat(i, resolution);
      row.inv_q = Rat(jj, resolution);
      row.regime = script ? regime_name(mu_regime_classify(d, p, q, w, family))
                          : regime_name(regime_classify(d, p, q, w, family));
      row.boundary = on_regime_boundary(d, p, q, w, family);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace uniscale
