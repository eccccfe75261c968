#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "uniscale/corpus.hpp"
#include "uniscale/decomp.hpp"
#include "uniscale/grid.hpp"
#include "uniscale/nls.hpp"
#include "uniscale/norms.hpp"
#include "uniscale/schrodinger.hpp"
#include "uniscale/window.hpp"

using namespace uniscale;

namespace {

struct rng64 {
  std::uint64_t s;
  explicit rng64(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double gauss() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
};

Field random_band_field(const GridSpec& g, std::uint64_t seed, int band) {
  rng64 r(seed);
  Field f = Field::zeros(g, Domain::spectral);
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    int n[3];
    g.decode(i, n);
    bool keep = true;
    for (int ax = 0; ax < g.d; ++ax)
      if (std::abs(g.signed_mode(n[ax])) > band * g.P) keep = false;
    if (keep) f.v[i] = cplx(r.gauss(), r.gauss());
  }
  return f;
}

Field single_mode(const GridSpec& g, int m0, double amp) {
  Field f = Field::zeros(g, Domain::spectral);
  int n[3] = {m0 < 0 ? m0 + g.N : m0, 0, 0};
  f.v[g.encode(n)] = amp;
  return f;
}

Field centered_gaussian(const GridSpec& g, double amp, double sigma) {
  Field f = Field::zeros(g, Domain::physical);
  const double c = g.edge() / 2.0;
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    int n[3];
    g.decode(i, n);
    double q = 0.0;
    for (int ax = 0; ax < g.d; ++ax) {
      const double x = g.dx() * n[ax] - c;
      q += x * x;
    }
    f.v[i] = amp * std::exp(-q / (2.0 * sigma * sigma));
  }
  return f;
}

double rel_l2_diff(const Field& a, const Field& b) {
  Field pa = a.domain == Domain::physical ? a : idft(a);
  Field pb = b.domain == Domain::physical ? b : idft(b);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < pa.v.size(); ++i) {
    num += std::norm(pa.v[i] - pb.v[i]);
    den += std::norm(pa.v[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double sup_abs(const Field& a) {
  double m = 0.0;
  for (const auto& z : a.v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

TEST_CASE("time exponent of p: exact values and errors") {
  CHECK(gamma_of_p(1, Exponent{2}).is_inf());
  CHECK(gamma_of_p(1, Exponent{4}) == Exponent{8});
  CHECK(gamma_of_p(1, Exponent::infinity()) == Exponent{4});
  CHECK(gamma_of_p(2, Exponent{4}) == Exponent{4});
  CHECK(gamma_of_p(2, Exponent::infinity()) == Exponent{2});
  CHECK(gamma_of_p(3, Exponent{2}).is_inf());
  CHECK(inv_gamma_of_p(1, Exponent{8}) == Rat(3, 16));
  CHECK(inv_gamma_of_p(1, Exponent{64}) == Rat(31, 128));
  CHECK_THROWS_AS((void)gamma_of_p(1, Exponent{Rat(3, 2)}), validation_error);
}

TEST_CASE("admissible pairs and the exponent gap") {
  CHECK(admissible(1, {Exponent::infinity(), Exponent{2}}));
  CHECK(admissible(1, {Exponent{8}, Exponent{4}}));
  CHECK(admissible(1, {Exponent{16}, Exponent{4}}));          // gamma above gamma(p)
  CHECK_FALSE(admissible(1, {Exponent{2}, Exponent::infinity()}));  // gamma < gamma(p) = 4
  CHECK_FALSE(admissible(2, {Exponent{2}, Exponent::infinity()}));  // excluded endpoint
  CHECK(admissible(3, {Exponent{2}, Exponent::infinity()}));
  CHECK_FALSE(admissible(1, {Exponent{Rat(3, 2)}, Exponent{4}}));   // gamma < 2
  CHECK_FALSE(admissible(1, {Exponent{4}, Exponent{Rat(3, 2)}}));   // p < 2

  CHECK(pair_delta(1, {Exponent{8}, Exponent{4}}) == Rat(0));
  CHECK(pair_delta(1, {Exponent::infinity(), Exponent{4}}) == Rat(1, 4));
  CHECK_THROWS_AS(require_admissible(2, {Exponent{2}, Exponent::infinity()}), validation_error);
}

TEST_CASE("free propagator: unitarity, group law, plane wave phase") {
  const GridSpec g(1, 256, 8);
  const Field u0 = random_band_field(g, 41, 2);
  const double n0 = lp_norm(idft(u0), Exponent{2});
  for (double t : {0.0, 0.3, 2.0, -1.7}) {
    const Field ut = propagate(u0, t);
    CHECK(ut.domain == Domain::spectral);
    CHECK(std::fabs(lp_norm(idft(ut), Exponent{2}) - n0) <= 1e-12 * n0);
  }
  // group law S(t)S(s) = S(t+s)
  const Field a = propagate(propagate(u0, 0.4), 0.35);
  const Field b = propagate(u0, 0.75);
  CHECK(rel_l2_diff(a, b) <= 1e-12);
  // identity at t = 0
  const Field id = propagate(u0, 0.0);
  for (std::size_t i = 0; i < id.v.size(); ++i) CHECK(id.v[i] == u0.v[i]);
  // plane wave: one lattice mode picks up exactly e^{-i t xi^2}
  const Field pw = single_mode(g, 3 * g.P, 2.0);  // xi = 3
  const double t = 0.6;
  const Field pwt = propagate(pw, t);
  int n[3] = {3 * g.P, 0, 0};
  const cplx expect = 2.0 * std::polar(1.0, -t * 9.0);
  CHECK(std::abs(pwt.v[g.encode(n)] - expect) <= 1e-12);
  // physical in, physical out
  const Field up = idft(u0);
  CHECK(propagate(up, 0.5).domain == Domain::physical);
}

TEST_CASE("free propagator commutes with the box projections") {
  const GridSpec g(1, 256, 8);
  const WindowFamily fam = build_window();
  const Field u0 = random_band_field(g, 43, 3);
  const double t = 0.9;
  const Field a = box_op(fam, propagate(u0, t), 0, {1, 0, 0});
  const Field b = propagate(box_op(fam, u0, 0, {1, 0, 0}), t);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    num = std::max(num, std::abs(a.v[i] - b.v[i]));
    den = std::max(den, std::abs(a.v[i]));
  }
  CHECK(num <= 1e-14 * std::max(den, 1.0));
}

TEST_CASE("spreading Gaussian matches the closed-form L^p decay law") {
  // |u(t)|_p = (1+4t^2)^{-(1/4-1/(2p))} (2pi/p)^{1/(2p)} for unit-width data
  const GridSpec g(1, 4096, 32);
  const Field u0 = centered_gaussian(g, 1.0, 1.0);
  const Field peak = propagate(u0, 0.7);
  CHECK(std::fabs(sup_abs(peak) - 0.76238979119548578) <= 1e-6);
  const Field q4 = propagate(u0, 1.25);
  CHECK(std::fabs(lp_norm(q4, Exponent{4}) - 0.82598609028869880) <= 1e-6);
  // the wrap estimate for this data leaves plenty of room for both times
  CHECK(t_wrap(g, 1.0) > 40.0);
  CHECK_THROWS_AS((void)t_wrap(g, g.edge()), validation_error);
  CHECK_THROWS_AS((void)t_wrap(g, 0.0), validation_error);
}

TEST_CASE("free flow trajectory") {
  const GridSpec g(1, 128, 8);
  const Field u0 = random_band_field(g, 44, 2);
  const auto traj = free_flow(u0, {0.0, 0.25, 0.5});
  CHECK(traj.size() == 3);
  CHECK(rel_l2_diff(traj.u[1], propagate(u0, 0.25)) == 0.0);
}

TEST_CASE("Duhamel integral: degenerate inputs and the semigroup identity") {
  const GridSpec g(1, 128, 8);
  const Field gfld = random_band_field(g, 45, 2);

  Trajectory zero;
  for (int n = 0; n <= 8; ++n) {
    zero.t.push_back(0.125 * n);
    zero.u.push_back(Field::zeros(g, Domain::spectral));
  }
  CHECK(sup_abs(duhamel(zero, 1.0)) == 0.0);
  CHECK(sup_abs(duhamel(zero, 0.0)) == 0.0);

  // F(tau) = S(tau) g makes S(t-tau)F(tau) constant in tau, so the
  // trapezoid rule integrates it without error: the result is t S(t) g.
  Trajectory semi;
  for (int n = 0; n <= 16; ++n) {
    const double tau = 0.0625 * n;
    semi.t.push_back(tau);
    semi.u.push_back(propagate(gfld, tau));
  }
  const double t = 0.625;
  const Field got = duhamel(semi, t);
  Field want = propagate(gfld, t);
  for (auto& z : want.v) z *= t;
  CHECK(rel_l2_diff(got, want) <= 1e-12);

  // validation: off-node time, non-uniform grid, nonzero start
  CHECK_THROWS_AS((void)duhamel(semi, 0.03), validation_error);
  CHECK_THROWS_AS((void)duhamel(semi, 2.0), validation_error);
  Trajectory ragged = semi;
  ragged.t[3] += 0.01;
  CHECK_THROWS_AS((void)duhamel(ragged, 0.5), validation_error);
  Trajectory shifted;
  shifted.t = {0.5, 1.0};
  shifted.u = {gfld, gfld};
  CHECK_THROWS_AS((void)duhamel(shifted, 1.0), validation_error);
}

TEST_CASE("Duhamel integral is second order against a per-mode closed form") {
  // F(tau) = cos(tau) g integrates per mode to
  //   e^{-i mu t} [ (e^{i(mu+1)t}-1)/(2i(mu+1)) + (e^{i(mu-1)t}-1)/(2i(mu-1)) ]
  // with the singular branches replaced by t/2.
  const GridSpec g(1, 128, 8);
  const Field gfld = random_band_field(g, 46, 2);
  const double t = 1.0;

  Field exact = Field::zeros(g, Domain::spectral);
  const auto xi = lattice_xi(g);
  for (std::size_t i = 0; i < exact.v.size(); ++i) {
    int n[3];
    g.decode(i, n);
    const double x = xi[static_cast<std::size_t>(n[0])];
    const double mu = x * x;
    const cplx I(0.0, 1.0);
    auto branch = [&](double a) -> cplx {
      if (std::fabs(a) < 1e-14) return cplx(t / 2.0, 0.0);
      return (std::exp(I * a * t) - 1.0) / (2.0 * I * a);
    };
    exact.v[i] = std::exp(-I * mu * t) * (branch(mu + 1.0) + branch(mu - 1.0)) * gfld.v[i];
  }

  auto quad_err = [&](int steps) {
    Trajectory F;
    for (int n = 0; n <= steps; ++n) {
      const double tau = t * n / steps;
      F.t.push_back(tau);
      Field fn = gfld;
      for (auto& z : fn.v) z *= std::cos(tau);
      F.u.push_back(std::move(fn));
    }
    return rel_l2_diff(duhamel(F, t), exact);
  };
  const double e1 = quad_err(16), e2 = quad_err(32);
  CHECK(e1 > 1e-8);  // coarse error is genuinely nonzero
  CHECK(e1 / e2 > 3.0);
  CHECK(e1 / e2 < 5.3);
}

TEST_CASE("Duhamel sign: u = S(t)u0 - iA F solves the inhomogeneous equation") {
  const GridSpec g(1, 128, 8);
  const Field u0 = random_band_field(g, 47, 2);
  const Field src = random_band_field(g, 48, 2);

  // residual of i u_t + Lap u - F at t = 0.5 by centered differences
  auto residual = [&](int n, double sgn) {
    const double h = 1.0 / n;
    const double t = 0.5;
    auto sol = [&](double at, int steps) {
      Trajectory F;
      for (int m = 0; m <= steps; ++m) {
        const double tau = at * m / steps;
        F.t.push_back(tau);
        Field fm = src;
        for (auto& z : fm.v) z *= std::cos(tau);
        F.u.push_back(std::move(fm));
      }
      Field out = propagate(u0, at);
      const Field integ = duhamel(F, at);
      for (std::size_t i = 0; i < out.v.size(); ++i)
        out.v[i] += sgn * cplx(0.0, 1.0) * integ.v[i];
      return out;
    };
    const Field um = sol(t - h, static_cast<int>((t - h) * n));
    const Field up = sol(t + h, static_cast<int>((t + h) * n));
    const Field uc = sol(t, static_cast<int>(t * n));
    Field res = Field::zeros(g, Domain::spectral);
    const auto xi = lattice_xi(g);
    for (std::size_t i = 0; i < res.v.size(); ++i) {
      int nn[3];
      g.decode(i, nn);
      const double x = xi[static_cast<std::size_t>(nn[0])];
      const cplx dudt = (up.v[i] - um.v[i]) / (2.0 * h);
      res.v[i] = cplx(0.0, 1.0) * dudt - x * x * uc.v[i] - std::cos(t) * src.v[i];
    }
    return lp_norm(idft(res), Exponent{2});
  };
  const double r16 = residual(16, -1.0);
  const double r32 = residual(32, -1.0);
  const double wrong = residual(16, +1.0);
  CHECK(r16 / r32 > 3.0);
  CHECK(r16 / r32 < 5.3);
  CHECK(r16 < 0.01 * wrong);  // the flipped sign leaves an O(1) residual
}

TEST_CASE("propagator box-norm growth check is exact at p = 2") {
  const GridSpec g(1, 512, 16);
  CorpusConfig cc;
  cc.grid = g;
  cc.count = 6;
  const Corpus corpus = make_corpus(cc);
  const WindowFamily fam = build_window();
  const auto rep = check_propagator_mj_bound(fam, corpus, {-1, 0}, Exponent{2}, Exponent{2},
                                             {0.0, 0.5, 2.0});
  REQUIRE(!rep.rows.empty());
  for (const auto& row : rep.rows) CHECK(std::fabs(row.ratio - 1.0) <= 1e-12);
  CHECK_THROWS_AS((void)check_propagator_mj_bound(fam, corpus, {99}, Exponent{2}, Exponent{2},
                                                  {0.0}),
                  validation_error);
}

TEST_CASE("dispersive decay ratio has a closed form on a plateau mode") {
  const GridSpec g(1, 512, 16);
  const double L = g.edge();
  CorpusConfig cc;
  cc.grid = g;
  cc.count = 1;
  Corpus corpus = make_corpus(cc);
  corpus.entries[0].f = single_mode(g, 2 * g.P, 1.3);  // xi = 2, box (0, k=2)
  corpus.entries[0].name = "mode";
  const WindowFamily fam = build_window();
  const ExponentPair pair{Exponent{Rat(16, 3)}, Exponent{8}};  // gamma(8) = 16/3
  const double e2 = 3.0 / 8.0;

  const auto rep = check_dispersive_decay(fam, corpus, pair, {0}, {0.0, 0.5, 4.0});
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) CHECK(std::isfinite(row.ratio));
  // |S(t)u| has constant modulus, so numerator and denominator are exact
  // powers of L and the ratio is L^{1/8-7/8} over the min-bound.
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = std::vector<double>{0.0, 0.5, 4.0}[i];
    const double bound = std::min(std::pow(t, -e2), 1.0);
    const double expect = std::pow(L, -0.75) / bound;
    CHECK(std::fabs(rep.rows[i].ratio - expect) <= 1e-12 * expect);
  }
  CHECK_THROWS_AS(
      (void)check_dispersive_decay(fam, corpus, {Exponent{2}, Exponent::infinity()}, {0}, {1.0}),
      validation_error);
}

TEST_CASE("homogeneous space-time bound: unitary endpoint is exactly one") {
  const GridSpec g(1, 512, 16);
  CorpusConfig cc;
  cc.grid = g;
  cc.count = 6;
  const Corpus corpus = make_corpus(cc);
  const WindowFamily fam = build_window();
  const auto rep = check_strichartz_homogeneous(fam, corpus, {Exponent::infinity(), Exponent{2}},
                                                {-1, 0}, 2.0, 9);
  REQUIRE(!rep.rows.empty());
  for (const auto& row : rep.rows) {
    CHECK(std::isfinite(row.ratio));
    if (row.ratio != 0.0) CHECK(std::fabs(row.ratio - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS((void)check_strichartz_homogeneous(
                      fam, corpus, {Exponent{2}, Exponent::infinity()}, {0}, 2.0, 9),
                  validation_error);
  CHECK_THROWS_AS((void)check_strichartz_homogeneous(
                      fam, corpus, {Exponent::infinity(), Exponent{2}}, {0}, 2.0, 1),
                  validation_error);
}

TEST_CASE("inhomogeneous space-time bound: energy endpoint stays under one") {
  const GridSpec g(1, 512, 16);
  CorpusConfig cc;
  cc.grid = g;
  cc.count = 6;
  const Corpus corpus = make_corpus(cc);
  const WindowFamily fam = build_window();
  const ExponentPair energy{Exponent::infinity(), Exponent{2}};
  const auto rep =
      check_strichartz_inhomogeneous(fam, corpus, energy, energy, {-1, 0}, 2.0, 9);
  REQUIRE(!rep.rows.empty());
  for (const auto& row : rep.rows) {
    CHECK(std::isfinite(row.ratio));
    CHECK(row.ratio <= 1.0 + 1e-9);  // triangle inequality per node
  }
}

TEST_CASE("log-log decay slopes for the spreading Gaussian") {
  const GridSpec g(1, 4096, 32);
  const Field u0 = centered_gaussian(g, 1.0, 1.0);
  const auto f8 = decay_slope_fit(u0, Exponent{8}, 1.0, 25.0, 12);
  CHECK(f8.expected == doctest::Approx(-0.375).epsilon(1e-12));
  CHECK(f8.rel_err < 0.15);
  const auto f64 = decay_slope_fit(u0, Exponent{64}, 1.0, 25.0, 12);
  CHECK(f64.expected == doctest::Approx(-0.484375).epsilon(1e-12));
  CHECK(f64.rel_err < 0.15);
  CHECK_THROWS_AS((void)decay_slope_fit(u0, Exponent{8}, -1.0, 2.0, 8), validation_error);
}

// ---- nonlinear solver ----

TEST_CASE("nonlinearity evaluation: exact forms, series limit, overflow") {
  const GridSpec g(1, 128, 8);
  Field u = Field::zeros(g, Domain::physical);
  CHECK(sup_abs(nonlinearity_eval(u, PowerNonlinearity{1, 3.0})) == 0.0);

  for (auto& z : u.v) z = cplx(0.3, -0.4);  // |u| = 0.5
  const Field cubic = nonlinearity_eval(u, PowerNonlinearity{1, 2.0});
  for (const auto& z : cubic.v) CHECK(std::abs(z - 2.0 * 0.25 * cplx(0.3, -0.4)) <= 1e-15);

  // exponential form approaches lambda |u|^2 u at fifth order in |u|
  const double lam = 0.7;
  auto series_gap = [&](double amp) {
    Field w = Field::zeros(g, Domain::physical);
    for (std::size_t i = 0; i < w.v.size(); ++i)
      w.v[i] = amp * cplx(std::cos(0.1 * static_cast<double>(i)),
                          std::sin(0.07 * static_cast<double>(i)));
    const Field full = nonlinearity_eval(w, ExpNonlinearity{lam});
    const Field two = nonlinearity_eval(w, PowerNonlinearity{1, lam});
    double m = 0.0;
    for (std::size_t i = 0; i < w.v.size(); ++i) m = std::max(m, std::abs(full.v[i] - two.v[i]));
    return m;
  };
  const double g1 = series_gap(0.1), g2 = series_gap(0.05);
  CHECK(g1 / g2 > 24.0);
  CHECK(g1 / g2 < 40.0);

  Field big = Field::zeros(g, Domain::physical);
  for (auto& z : big.v) z = 40.0;
  CHECK_THROWS_AS((void)nonlinearity_eval(big, ExpNonlinearity{1.0}), numeric_error);
  CHECK_THROWS_AS((void)nonlinearity_eval(dft(u), PowerNonlinearity{1, 1.0}), validation_error);
}

TEST_CASE("Picard: zero data and the linear limit") {
  const GridSpec g(1, 256, 8);
  NLSProblem prob;
  prob.grid = g;
  prob.nonlinearity = PowerNonlinearity{1, 1.0};
  prob.u0 = Field::zeros(g, Domain::physical);
  prob.T = 0.5;
  SolverConfig cfg;
  cfg.steps = 8;
  const PicardResult zr = picard_solve(prob, cfg);
  CHECK(zr.converged);
  for (const auto& u : zr.traj.u) CHECK(sup_abs(u) == 0.0);

  prob.u0 = centered_gaussian(g, 0.4, 1.0);
  prob.nonlinearity = PowerNonlinearity{1, 0.0};
  const PicardResult lin = picard_solve(prob, cfg);
  CHECK(lin.converged);
  CHECK(lin.iterations == std::vector<std::size_t>{1});
  for (std::size_t n = 0; n < lin.traj.size(); ++n)
    CHECK(rel_l2_diff(lin.traj.u[n], propagate(prob.u0, lin.traj.t[n])) <= 1e-12);
  CHECK(lin.history.t.size() == lin.traj.size());
  CHECK(lin.history.l2.size() == lin.traj.size());
  CHECK(lin.history.m0_21.front() > 0.0);
  CHECK(lin.spacetime.size() == 1);
  CHECK(lin.spacetime[0].second > 0.0);
}

TEST_CASE("Picard matches the split-step reference and improves under refinement") {
  const GridSpec g(1, 256, 8);
  NLSProblem prob;
  prob.grid = g;
  prob.nonlinearity = PowerNonlinearity{1, 1.0};
  prob.u0 = centered_gaussian(g, 0.3, 1.0);
  prob.T = 0.5;

  const Trajectory ref = splitstep_reference(prob, prob.T / 4096);
  SolverConfig coarse;
  coarse.windows = 2;
  coarse.steps = 16;  // dt = 1/128
  const PicardResult pc = picard_solve(prob, coarse);
  REQUIRE(pc.converged);
  const double err_c = rel_l2_diff(pc.traj.u.back(), ref.u.back());
  CHECK(err_c <= 1e-4);

  SolverConfig fine = coarse;
  fine.steps = 64;  // dt / 4
  const PicardResult pf = picard_solve(prob, fine);
  REQUIRE(pf.converged);
  const double err_f = rel_l2_diff(pf.traj.u.back(), ref.u.back());
  CHECK(err_f > 0.0);
  CHECK(err_c / err_f >= 4.0);
}

TEST_CASE("split-step reference: exact linear limit and per-step mass conservation") {
  const GridSpec g(1, 256, 8);
  NLSProblem prob;
  prob.grid = g;
  prob.u0 = centered_gaussian(g, 0.5, 1.0);
  prob.T = 1.0;
  prob.nonlinearity = PowerNonlinearity{1, 0.0};
  const Trajectory lin = splitstep_reference(prob, 0.125);
  for (std::size_t n = 0; n < lin.size(); ++n)
    CHECK(rel_l2_diff(lin.u[n], propagate(prob.u0, lin.t[n])) <= 1e-12);

  prob.nonlinearity = PowerNonlinearity{2, -1.5};
  const Trajectory tr = splitstep_reference(prob, 0.01);
  const double m0 = lp_norm(tr.u.front(), Exponent{2});
  for (const auto& u : tr.u)
    CHECK(std::fabs(lp_norm(u, Exponent{2}) - m0) <= 1e-12 * m0);
  CHECK_THROWS_AS((void)splitstep_reference(prob, 0.0), validation_error);
}

TEST_CASE("Picard mass drift stays quadratic in the step") {
  const GridSpec g(1, 256, 8);
  NLSProblem prob;
  prob.grid = g;
  prob.nonlinearity = PowerNonlinearity{1, 1.0};
  prob.u0 = centered_gaussian(g, 0.3, 1.0);
  prob.T = 1.0;
  auto drift = [&](std::size_t steps) {
    SolverConfig cfg;
    cfg.windows = 4;
    cfg.steps = steps;
    const PicardResult r = picard_solve(prob, cfg);
    REQUIRE(r.converged);
    double m = 0.0;
    for (double v : r.history.l2) m = std::max(m, std::fabs(v - r.history.l2.front()));
    return m / r.history.l2.front();
  };
  const double d16 = drift(16);
  CHECK(d16 <= 1e-6);
  const double d32 = drift(32);
  CHECK(d16 / d32 > 3.0);
  CHECK(d16 / d32 < 5.5);
}

TEST_CASE("gauge covariance of both integrators") {
  const GridSpec g(1, 256, 8);
  NLSProblem prob;
  prob.grid = g;
  prob.nonlinearity = PowerNonlinearity{1, -1.0};
  prob.u0 = centered_gaussian(g, 0.4, 1.0);
  prob.T = 0.25;
  const cplx phase = std::polar(1.0, 0.7);
  NLSProblem rot = prob;
  rot.u0 = prob.u0;
  for (auto& z : rot.u0.v) z *= phase;

  SolverConfig cfg;
  cfg.steps = 16;
  const PicardResult a = picard_solve(prob, cfg);
  const PicardResult b = picard_solve(rot, cfg);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  Field rotated = a.traj.u.back();
  for (auto& z : rotated.v) z *= phase;
  CHECK(rel_l2_diff(b.traj.u.back(), rotated) <= 1e-12);

  const Trajectory sa = splitstep_reference(prob, 0.0125);
  const Trajectory sb = splitstep_reference(rot, 0.0125);
  Field srot = sa.u.back();
  for (auto& z : srot.v) z *= phase;
  CHECK(rel_l2_diff(sb.u.back(), srot) <= 1e-12);
}

TEST_CASE("tracked norm history along a nonlinear solution") {
  const GridSpec g(1, 256, 8);
  NLSProblem prob;
  prob.grid = g;
  prob.nonlinearity = PowerNonlinearity{1, 1.0};
  prob.u0 = centered_gaussian(g, 0.3, 1.0);
  prob.T = 0.25;
  SolverConfig cfg;
  cfg.steps = 8;
  NormSpec fr;
  fr.family = NormFamily::frak_neg;
  fr.p = Exponent{2};
  fr.q = Exponent{1};
  fr.w = Rat(1, 2);  // on the nondegenerate side of d(1/p+1/q-1)
  NormSpec sc;
  sc.family = NormFamily::script_neg;
  sc.p = Exponent{2};
  sc.q = Exponent{1};
  sc.r = Exponent{1};
  sc.w = Rat(-1, 4);
  cfg.track = {fr, sc};
  const PicardResult r = picard_solve(prob, cfg);
  REQUIRE(r.converged);
  REQUIRE(r.history.tracked.size() == 2);
  CHECK(r.history.tracked_names[0] == "frak_neg_w=1/2_p=2_q=1_r=inf");
  CHECK(r.history.tracked_names[1] == "script_neg_upper_w=-1/4_p=2_q=1_r=1");
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r.history.tracked[i].size() == r.history.t.size());
    for (double v : r.history.tracked[i]) {
      CHECK(std::isfinite(v));
      CHECK(v > 0.0);
    }
  }
}

TEST_CASE("contraction audit: linear limit and amplitude scaling") {
  const GridSpec g(1, 256, 8);
  NLSProblem prob;
  prob.grid = g;
  prob.nonlinearity = PowerNonlinearity{1, 0.0};
  prob.u0 = centered_gaussian(g, 0.3, 1.0);
  prob.T = 0.25;
  SolverConfig cfg;
  cfg.steps = 8;
  const ContractionReport lin = contraction_audit(prob, cfg, {1.0}, 2, 5);
  CHECK(lin.factor_at_base == 0.0);
  CHECK(lin.contracting);
  CHECK(lin.observed_iters == std::vector<std::size_t>{1});

  prob.nonlinearity = PowerNonlinearity{1, 1.0};
  const ContractionReport rep = contraction_audit(prob, cfg);
  CHECK(rep.expected_slope == 2.0);
  CHECK(rep.factor_at_base < 0.5);
  CHECK(rep.contracting);
  CHECK(rep.rel_err < 0.2);
  for (std::size_t i = 0; i < rep.predicted_iters.size(); ++i) {
    CHECK(rep.observed_iters[i] >= 1);
    CHECK(rep.predicted_iters[i] >= 1);
  }
}

TEST_CASE("blowup monitor: quiet linear flow, threshold crossing, solver failure") {
  const GridSpec g(1, 256, 8);
  const WindowFamily fam = build_window();
  NormSpec spec;
  spec.family = NormFamily::single_scale_j;
  spec.j = 0;
  spec.p = Exponent{2};
  spec.q = Exponent{1};

  NLSProblem prob;
  prob.grid = g;
  prob.nonlinearity = PowerNonlinearity{1, 0.0};
  prob.u0 = centered_gaussian(g, 0.4, 1.0);
  prob.T = 0.5;
  SolverConfig cfg;
  cfg.steps = 8;
  const PicardResult lin = picard_solve(prob, cfg);
  const BlowupReport quiet = blowup_monitor(lin, fam, spec, 1e3 * lin.history.m0_21.front());
  CHECK_FALSE(quiet.flagged);
  CHECK(quiet.t_lower_bound == doctest::Approx(0.5));
  CHECK(quiet.peak >= quiet.initial * (1.0 - 1e-9));

  const BlowupReport never =
      blowup_monitor(lin, fam, spec, std::numeric_limits<double>::infinity());
  CHECK_FALSE(never.flagged);

  // strong focusing data with a starved iteration budget must be flagged
  NLSProblem hard = prob;
  hard.nonlinearity = PowerNonlinearity{3, -5.0};
  hard.u0 = centered_gaussian(g, 2.0, 1.0);
  SolverConfig tight = cfg;
  tight.max_iters = 1;
  const PicardResult fail = picard_solve(hard, tight);
  CHECK_FALSE(fail.converged);
  const BlowupReport flagged = blowup_monitor(fail, fam, spec, 1e300);
  CHECK(flagged.flagged);
  CHECK(flagged.note.find("converge") != std::string::npos);
}

TEST_CASE("lacunary ladder: construction, support identity, exactness") {
  const GridSpec g(1, 2048, 32);
  const WindowFamily fam = build_window();

  const SupercriticalFamily empty = supercritical_family(10, 0, g);
  CHECK(empty.dec.size() == 0);
  CHECK(sup_abs(empty.f) == 0.0);

  const SupercriticalFamily sf = supercritical_family(14, 0, g);
  REQUIRE(sf.dec.size() == 4);
  for (std::size_t i = 0; i < sf.dec.size(); ++i) {
    const int j = sf.dec.j[i];
    CHECK(j == -11 - static_cast<int>(i));
    const double aj = std::fabs(static_cast<double>(j));
    const double expect = std::pow(2.0, aj) / (aj * std::log(aj) * std::log(aj));
    CHECK(sf.amp[i] == doctest::Approx(expect).epsilon(1e-15));

    // the piece is exactly its own box projection at its own scale ...
    const long long kk = static_cast<long long>(j) * (1ll << (-j));
    const std::array<int, 3> k{static_cast<int>(kk), 0, 0};
    const Field proj = box_op_raw(fam, sf.dec.piece[i], j, k);
    double diff = 0.0;
    for (std::size_t m = 0; m < proj.v.size(); ++m)
      diff = std::max(diff, std::abs(proj.v[m] - sf.dec.piece[i].v[m]));
    CHECK(diff <= 1e-14 * sf.amp[i]);
    // ... and vanishes in the neighboring boxes
    const std::array<int, 3> kn{static_cast<int>(kk) + 1, 0, 0};
    CHECK(sup_abs(box_op_raw(fam, sf.dec.piece[i], j, kn)) == 0.0);
  }
  // the ladder with a kappa tilt rescales each rung by 2^{j/kappa}
  const SupercriticalFamily tilted = supercritical_family(14, 2, g);
  for (std::size_t i = 0; i < tilted.amp.size(); ++i) {
    const double ratio = tilted.amp[i] / sf.amp[i];
    CHECK(ratio == doctest::Approx(std::pow(2.0, tilted.dec.j[i] / 2.0)).epsilon(1e-14));
  }

  CHECK_THROWS_AS((void)supercritical_family(9, 0, g), validation_error);
  CHECK_THROWS_AS((void)supercritical_family(40, 0, g), validation_error);
  CHECK_THROWS_AS((void)supercritical_family(14, -1, g), validation_error);
}

TEST_CASE("ladder norm table: divergent column vs stabilizing column") {
  const GridSpec g(1, 2048, 32);
  const double L = g.edge();
  const auto rep =
      verify_supercritical_norms({14, 18, 22}, {Exponent{2}}, g, 0);
  REQUIRE(rep.rows.size() == 3);

  auto tail_sum = [&](int J, double weight_exp) {
    double s = 0.0;
    for (int j = -11; j >= -J; --j) {
      const double aj = std::fabs(static_cast<double>(j));
      const double amp = std::pow(2.0, aj) / (aj * std::log(aj) * std::log(aj));
      s += std::pow(2.0, weight_exp * static_cast<double>(j)) * amp;
    }
    return s;
  };
  for (const auto& row : rep.rows) {
    // unit-scale column: every rung sits alone in one unit box of weight one
    const double m0_expect = std::sqrt(L) * tail_sum(row.J, 0.0);
    CHECK(row.m0 == doctest::Approx(m0_expect).epsilon(1e-11));
    // ladder upper bound: the 2^{jd} weight cancels the amplitude growth
    const double up_expect = L * tail_sum(row.J, 1.0);
    CHECK(row.upper == doctest::Approx(up_expect).epsilon(1e-11));
  }
  CHECK(rep.rows[1].m0_ratio >= 4.0);
  CHECK(rep.rows[2].m0_ratio >= 4.0);
  CHECK(rep.rows[1].upper_increment > 0.0);
  CHECK(rep.rows[2].upper_increment > 0.0);
  CHECK(rep.rows[2].upper_increment < rep.rows[1].upper_increment);
  // the divergent column tracks the deepest-rung amplitude: the ratio sits
  // near the geometric-tail constant sum_m 2^{-m} (log-corrected)
  for (const auto& row : rep.rows) {
    CHECK(row.predicted > 0.0);
    const double fitted = row.m0 / (std::sqrt(L) * row.predicted);
    CHECK(fitted > 1.5);
    CHECK(fitted < 3.0);
  }
}
