// Acceptance gate: eight end-to-end checks over the whole library, one
// printed line each.  Tolerances are pinned in this file on purpose; the
// exit status is the number of failed checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "uniscale/common.hpp"
#include "uniscale/corpus.hpp"
#include "uniscale/decomp.hpp"
#include "uniscale/grid.hpp"
#include "uniscale/harness.hpp"
#include "uniscale/nls.hpp"
#include "uniscale/norms.hpp"
#include "uniscale/rational.hpp"
#include "uniscale/report.hpp"
#include "uniscale/schrodinger.hpp"
#include "uniscale/window.hpp"

namespace {

using namespace uniscale;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double l2(const Field& f) {
  if (f.domain == Domain::physical) return lp_norm(f, Exponent(Rat(2)));
  double s = 0.0;
  for (const auto& z : f.v) s += std::norm(z);
  return std::sqrt(s * std::pow(f.grid.edge(), f.grid.d));
}

double rel_l2_diff(const Field& a, const Field& b) {
  Field d = a;
  for (std::size_t i = 0; i < d.v.size(); ++i) d.v[i] -= b.v[i];
  const double den = l2(b);
  return den > 0.0 ? l2(d) / den : l2(d);
}

Field centered_gaussian(const GridSpec& g, double amp, double sigma) {
  Field f(g, Domain::physical);
  const double L = g.edge();
  for (int n = 0; n < g.N; ++n) {
    const double x = n * g.dx() - L / 2.0;
    f.v[static_cast<std::size_t>(n)] = amp * std::exp(-x * x / (2.0 * sigma * sigma));
  }
  return f;
}

struct Line {
  bool ok = false;
  std::string detail;
};

// 1. Window sums telescope to one on the whole lattice, box sums rebuild the
//    field, and well-separated boxes are orthogonal -- at every valid scale
//    of a 1-d and a 2-d grid.
Line crit1() {
  const WindowFamily fam = build_window();
  const GridSpec grids[] = {{1, 1024, 16}, {2, 128, 8}};
  double worst_pou = 0.0, worst_rec = 0.0, worst_orth = 0.0;
  std::uint64_t idx = 0;
  for (const auto& g : grids) {
    const ScaleRange sr = scale_range(g);
    for (int j = sr.j_min; j <= sr.j_max; ++j) {
      // partition of unity along one axis covers the tensor product
      const double scale = std::pow(2.0, -j);
      for (int m = -g.N / 2; m < g.N / 2; ++m) {
        const double t = scale * g.xi_of_mode(m);
        const long long kc = std::llround(t);
        double s = 0.0;
        for (long long k = kc - 2; k <= kc + 2; ++k)
          s += fam.h(t - static_cast<double>(k));
        worst_pou = std::max(worst_pou, std::abs(s - 1.0));
      }
      const Field f = make_entry(g, CorpusTag::random_bandlimited, 7, idx++);
      worst_rec = std::max(worst_rec, rel_l2_diff(reconstruct(fam, f, j), f));
      worst_orth = std::max(worst_orth, almost_orthogonality_check(fam, f, j, 200) / l2(f));
    }
  }
  const bool ok = worst_pou <= 1e-12 && worst_rec <= 1e-11 && worst_orth <= 1e-12;
  return {ok, fmt("pou=%.2e recon=%.2e orth=%.2e", worst_pou, worst_rec, worst_orth)};
}

// 2. The box-sum norm agrees with its dilate-to-unit-scale oracle over a
//    50-field corpus, five scales, five exponent pairs.
Line crit2() {
  CorpusConfig cc;
  cc.grid = GridSpec{1, 2048, 128};
  cc.count = 50;
  cc.seed = 11;
  const Corpus corpus = make_corpus(cc);
  const WindowFamily fam = build_window();
  const std::pair<Exponent, Exponent> pqs[] = {
      {Exponent(Rat(1)), Exponent(Rat(1))},    {Exponent(Rat(2)), Exponent(Rat(1))},
      {Exponent(Rat(2)), Exponent(Rat(2))},    {Exponent(Rat(4)), Exponent(Rat(4, 3))},
      {Exponent::infinity(), Exponent(Rat(1))}};
  double worst = 0.0;
  std::size_t combos = 0;
  for (int j = 0; j >= -4; --j)
    for (const auto& e : corpus.entries)
      for (const auto& pq : pqs) {
        const double a = mj_norm(fam, e.f, j, pq.first, pq.second);
        const double b = mj_norm_oracle(fam, e.f, j, pq.first, pq.second);
        ++combos;
        const double den = std::max(a, b);
        if (den > 1e-300) worst = std::max(worst, std::abs(a - b) / den);
      }
  return {worst <= 1e-9, fmt("max rel gap %.2e over %zu combos", worst, combos)};
}

// 3. Thirty hand-worked classifier cases, every outcome represented for all
//    six families.
Line crit3() {
  struct Case {
    int d;
    const char* p;
    const char* q;
    Rat w;
    NormFamily fam;
    const char* expect;
  };
  const Case cases[] = {
      {1, "2", "1", Rat(1, 4), NormFamily::frak_neg, "degenerate"},
      {1, "2", "1", Rat(1, 2), NormFamily::frak_neg, "coincides_with_M0"},
      {2, "4", "4/3", Rat(1, 2), NormFamily::frak_neg, "nontrivial_new_space"},
      {1, "4", "2", Rat(0), NormFamily::frak_neg, "nontrivial_new_space"},
      {1, "4", "2", Rat(1, 4), NormFamily::frak_neg, "coincides_with_M0"},
      {1, "2", "1", Rat(1, 10), NormFamily::frak_pos, "degenerate"},
      {1, "2", "1", Rat(0), NormFamily::frak_pos, "coincides_with_M0"},
      {1, "2", "4", Rat(-1, 10), NormFamily::frak_pos, "nontrivial_new_space"},
      {1, "2", "4", Rat(-1, 4), NormFamily::frak_pos, "coincides_with_M0"},
      {2, "4", "4/3", Rat(-1, 2), NormFamily::frak_pos, "coincides_with_M0"},
      {1, "2", "1", Rat(1, 4), NormFamily::frak_dot, "degenerate"},
      {1, "4", "4", Rat(-3, 4), NormFamily::frak_dot, "degenerate"},
      {2, "2", "2", Rat(0), NormFamily::frak_dot, "coincides_with_M0"},
      {1, "4", "4", Rat(-1, 4), NormFamily::frak_dot, "nontrivial_new_space"},
      {1, "4", "4", Rat(0), NormFamily::frak_dot, "nontrivial_new_space"},
      {1, "2", "1", Rat(1), NormFamily::script_neg, "zero_seminorm_on_schwartz"},
      {1, "2", "1", Rat(1, 4), NormFamily::script_neg, "nontrivial_banach"},
      {1, "2", "1", Rat(0), NormFamily::script_neg, "coincides_with_M0"},
      {1, "4", "2", Rat(-1, 2), NormFamily::script_neg, "coincides_with_M0"},
      {2, "2", "1", Rat(1), NormFamily::script_neg, "nontrivial_banach"},
      {1, "2", "1", Rat(-1, 10), NormFamily::script_pos, "zero_seminorm_on_schwartz"},
      {1, "2", "1", Rat(1, 4), NormFamily::script_pos, "nontrivial_banach"},
      {1, "2", "1", Rat(1, 2), NormFamily::script_pos, "coincides_with_M0"},
      {2, "4", "4/3", Rat(1, 2), NormFamily::script_pos, "nontrivial_banach"},
      {1, "4", "2", Rat(1, 4), NormFamily::script_pos, "coincides_with_M0"},
      {1, "2", "1", Rat(3, 4), NormFamily::script_dot, "zero_seminorm_on_schwartz"},
      {1, "2", "1", Rat(1, 4), NormFamily::script_dot, "nontrivial_banach"},
      {2, "2", "2", Rat(0), NormFamily::script_dot, "coincides_with_M0"},
      {1, "4", "4", Rat(1, 10), NormFamily::script_dot, "zero_seminorm_on_schwartz"},
      {2, "2", "1", Rat(1, 2), NormFamily::script_dot, "nontrivial_banach"},
  };
  std::size_t hits = 0, total = 0;
  for (const auto& c : cases) {
    ++total;
    const Exponent p = parse_exponent(c.p), q = parse_exponent(c.q);
    const bool profile = c.fam == NormFamily::frak_neg || c.fam == NormFamily::frak_pos ||
                         c.fam == NormFamily::frak_dot;
    const char* got = profile ? regime_name(regime_classify(c.d, p, q, c.w, c.fam))
                              : regime_name(mu_regime_classify(c.d, p, q, c.w, c.fam));
    if (std::string(got) == c.expect) ++hits;
  }
  return {hits == total, fmt("%zu/%zu exact", hits, total)};
}

// 4. The full inequality battery passes on the default 1-d configuration and
//    on a 2-d grid.
Line crit4() {
  HarnessConfig h1;  // (1, 2048, 64), 12 entries
  const auto r1 = run_all(h1);
  HarnessConfig h2;
  h2.grid = GridSpec{2, 256, 16};
  h2.corpus_count = 8;
  const auto r2 = run_all(h2);
  std::size_t p1 = 0, p2 = 0;
  for (const auto& r : r1) p1 += r.pass ? 1 : 0;
  for (const auto& r : r2) p2 += r.pass ? 1 : 0;
  const bool ok = p1 == r1.size() && p2 == r2.size();
  return {ok, fmt("d=1: %zu/%zu pass, d=2: %zu/%zu pass", p1, r1.size(), p2, r2.size())};
}

// 5. Dispersive bound: the two-branch envelope is crossed continuously, the
//    sup-norm decay rate matches the conjugate-exponent prediction, and the
//    space-time reports stay finite and scale-uniform.
Line crit5() {
  const WindowFamily fam = build_window();
  const GridSpec g{1, 512, 16};

  // ratio scan across the |t| = 2^{-2j} branch switch (j = -1, p = 8)
  const Field u0 = make_entry(g, CorpusTag::gaussian, 2, 0);
  const int j = -1;
  const std::array<int, 3> k0{0, 0, 0};
  const Exponent p8{Rat(8)}, p87{Rat(8, 7)};
  const double e2 = 0.375;  // 2/gamma(8) in d = 1
  const double den = lp_norm(idft(box_op(fam, u0, j, k0)), p87);
  std::vector<double> ratio;
  double max_jump = 0.0;
  for (double t : {3.90, 3.95, 4.00, 4.05, 4.10}) {
    const double num = lp_norm(idft(box_op(fam, propagate(u0, t), j, k0)), p8);
    const double bound = std::min(std::pow(t, -e2), std::pow(2.0, 2 * j * e2));
    ratio.push_back(num / (bound * den));
  }
  bool finite = true;
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    finite = finite && std::isfinite(ratio[i]) && ratio[i] > 0.0;
    if (i > 0) max_jump = std::max(max_jump, std::abs(ratio[i] - ratio[i - 1]) / ratio[i - 1]);
  }

  // decay slope of a wide Gaussian against the predicted exponent
  const GridSpec gb{1, 4096, 32};
  const Field ub = centered_gaussian(gb, 1.0, 1.0);
  const DecaySlopeFit f8 = decay_slope_fit(ub, Exponent(Rat(8)), 1.0, 25.0, 12);
  const DecaySlopeFit f64 = decay_slope_fit(ub, Exponent(Rat(64)), 1.0, 25.0, 12);

  // space-time reports on a small corpus
  CorpusConfig cc;
  cc.grid = g;
  cc.count = 6;
  cc.seed = 5;
  const Corpus corpus = make_corpus(cc);
  const ExponentPair pr{Exponent(Rat(16, 3)), Exponent(Rat(8))};
  const std::vector<int> jl{-1, 0, 1};
  RatioReport hom = check_strichartz_homogeneous(fam, corpus, pr, jl, 2.0, 9);
  RatioReport inh = check_strichartz_inhomogeneous(fam, corpus, pr, pr, jl, 2.0, 9);
  RatioReport dis = check_dispersive_decay(fam, corpus, pr, jl, {0.5, 2.0, 4.0, 8.0});
  hom.finalize(4.0);
  inh.finalize(4.0);
  dis.finalize(4.0);

  const bool ok = finite && max_jump <= 0.02 && f8.rel_err <= 0.15 && f64.rel_err <= 0.15 &&
                  hom.finite && hom.uniform && inh.finite && inh.uniform && dis.finite &&
                  dis.uniform;
  return {ok, fmt("crossover jump %.3f; slopes %.4f/%.4f (err %.3f/%.3f); spreads %.2f/%.2f/%.2f",
                  max_jump, f8.slope, f64.slope, f8.rel_err, f64.rel_err, hom.spread, inh.spread,
                  dis.spread)};
}

// 6. Fixed-point solver: exact linear limit, split-step cross-check with
//    second-order refinement, mass conservation, contraction-rate scaling.
Line crit6() {
  const GridSpec g{1, 256, 8};
  const Field u0 = centered_gaussian(g, 0.8, 3.0);

  NLSProblem lin;
  lin.grid = g;
  lin.nonlinearity = PowerNonlinearity{1, 0.0};
  lin.u0 = u0;
  lin.T = 0.5;
  SolverConfig coarse;
  coarse.windows = 2;
  coarse.steps = 16;
  const PicardResult rl = picard_solve(lin, coarse);
  double lin_err = rel_l2_diff(rl.traj.u.back(), propagate(u0, lin.T));
  for (std::size_t it : rl.iterations)
    if (it != 1) lin_err = 1.0;  // the linear problem must settle in one sweep

  NLSProblem cub = lin;
  cub.nonlinearity = PowerNonlinearity{1, 1.0};
  const Trajectory ref = splitstep_reference(cub, cub.T / 4096.0);
  SolverConfig fine = coarse;
  fine.steps = 64;
  const double err_c = rel_l2_diff(picard_solve(cub, coarse).traj.u.back(), ref.u.back());
  const double err_f = rel_l2_diff(picard_solve(cub, fine).traj.u.back(), ref.u.back());

  NLSProblem mass = cub;
  mass.u0 = centered_gaussian(g, 0.3, 1.0);
  mass.T = 1.0;
  SolverConfig cm;
  cm.windows = 4;
  cm.steps = 16;
  const PicardResult rm = picard_solve(mass, cm);
  double drift = 0.0;
  for (double v : rm.history.l2)
    drift = std::max(drift, std::abs(v - rm.history.l2.front()) / rm.history.l2.front());

  SolverConfig ca;
  ca.windows = 1;
  ca.steps = 16;
  const ContractionReport c1 = contraction_audit(cub, ca);
  NLSProblem quint = cub;
  quint.nonlinearity = PowerNonlinearity{2, -0.5};
  quint.T = 0.25;
  const ContractionReport c2 = contraction_audit(quint, ca);

  const bool ok = lin_err <= 1e-10 && err_c <= 1e-4 && err_c / err_f >= 4.0 && drift <= 1e-6 &&
                  c1.rel_err <= 0.2 && c2.rel_err <= 0.2;
  return {ok,
          fmt("linear %.1e; vs split-step %.1e -> %.1e; mass drift %.1e; slopes %.2f/%.2f "
              "(want %.0f/%.0f)",
              lin_err, err_c, err_f, drift, c1.slope, c2.slope, c1.expected_slope,
              c2.expected_slope)};
}

// 7. Mode-ladder table: the unit-scale column at least quadruples per step
//    while the per-scale upper bound converges, and each rung is exactly its
//    own box projection.
Line crit7() {
  const GridSpec g{1, 2048, 32};
  const SupercriticalReport rep =
      verify_supercritical_norms({14, 18, 22}, {Exponent(Rat(2))}, g, 0);
  bool ok = rep.rows.size() == 3;
  if (ok) {
    ok = rep.rows[1].m0_ratio >= 4.0 && rep.rows[2].m0_ratio >= 4.0 &&
         rep.rows[1].upper_increment > 0.0 && rep.rows[2].upper_increment > 0.0 &&
         rep.rows[2].upper_increment < rep.rows[1].upper_increment;
  }
  const WindowFamily fam = build_window();
  const SupercriticalFamily ladder = supercritical_family(22, 0, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < ladder.dec.piece.size(); ++i) {
    const int j = ladder.dec.j[i];
    const long long kk = static_cast<long long>(j) * (1ll << (-j));
    const Field proj = ladder.dec.piece[i];
    const Field back = box_op_raw(fam, proj, j, {static_cast<int>(kk), 0, 0});
    double diff = 0.0;
    for (std::size_t m = 0; m < back.v.size(); ++m)
      diff = std::max(diff, std::abs(back.v[m] - proj.v[m]));
    worst = std::max(worst, diff / ladder.amp[i]);
  }
  ok = ok && worst <= 1e-11;
  return {ok, fmt("m0 ratios %.2f/%.2f; increments %.3f > %.3f; support gap %.1e",
                  rep.rows.size() == 3 ? rep.rows[1].m0_ratio : 0.0,
                  rep.rows.size() == 3 ? rep.rows[2].m0_ratio : 0.0,
                  rep.rows.size() == 3 ? rep.rows[1].upper_increment : 0.0,
                  rep.rows.size() == 3 ? rep.rows[2].upper_increment : 0.0, worst)};
}

// 8. Bitwise reproducibility: rerunning the battery, and running it on 1 or
//    4 threads, produces byte-identical serialized reports.
Line crit8() {
  HarnessConfig hc;
  hc.grid = GridSpec{1, 512, 16};
  hc.corpus_count = 6;
  hc.seed = 3;

  CorpusConfig cc;
  cc.grid = hc.grid;
  cc.count = 4;
  cc.seed = 9;
  const Corpus corpus = make_corpus(cc);
  const WindowFamily fam = build_window();
  const auto prop = [&] {
    std::vector<RatioReport> v{check_propagator_mj_bound(
        fam, corpus, {0, 1}, Exponent(Rat(4)), Exponent(Rat(2)), {0.5, 1.0})};
    v.back().finalize(4.0);
    return reports_to_csv(v);
  };

  set_thread_count(1);
  const auto ra = run_all(hc);
  const std::string ja = reports_to_json(ra), sa = reports_to_csv(ra), pa = prop();
  const auto rb = run_all(hc);
  const std::string jb = reports_to_json(rb), sb = reports_to_csv(rb);
  set_thread_count(4);
  const auto rc = run_all(hc);
  const std::string jc = reports_to_json(rc), sc = reports_to_csv(rc), pc = prop();
  set_thread_count(0);

  const bool rerun = ja == jb && sa == sb;
  const bool threads = ja == jc && sa == sc && pa == pc;
  return {rerun && threads, fmt("rerun %s, 1-vs-4 threads %s (%zu bytes json)",
                                rerun ? "identical" : "DIFFERS",
                                threads ? "identical" : "DIFFERS", ja.size())};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Line (*fn)();
  };
  const Entry entries[] = {
      {"window partition / reconstruction / orthogonality", crit1},
      {"box-sum norm vs dilation oracle", crit2},
      {"regime classifier table", crit3},
      {"inequality battery d=1 and d=2", crit4},
      {"dispersive envelope, decay slopes, space-time reports", crit5},
      {"fixed-point solver cross-checks", crit6},
      {"mode-ladder norm table", crit7},
      {"bitwise reproducibility", crit8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < std::size(entries); ++i) {
    Line line;
    try {
      line = entries[i].fn();
    } catch (const std::exception& e) {
      line = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s - %s (%s)\n", i + 1, line.ok ? "PASS" : "FAIL",
                entries[i].name, line.detail.c_str());
    std::fflush(stdout);
    if (!line.ok) ++failures;
  }
  return failures;
}
