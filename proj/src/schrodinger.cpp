#include "uniscale/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "uniscale/common.hpp"
#include "uniscale/decomp.hpp"

namespace uniscale {
namespace {

std::string istr(const char* key, int v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s=%d", key, v);
  return buf;
}

std::string gstr(const char* key, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s=%g", key, v);
  return buf;
}

std::string kstr(const std::array<int, 3>& k, int d) {
  std::string s = "k=";
  for (int i = 0; i < d; ++i) {
    if (i) s += '_';
    s += std::to_string(k[static_cast<std::size_t>(i)]);
  }
  return s;
}

std::vector<std::array<int, 3>> sample_indices(const std::vector<std::array<int, 3>>& active,
                                               std::size_t want) {
  if (active.size() <= want) return active;
  std::vector<std::array<int, 3>> out;
  for (std::size_t s = 0; s < want; ++s)
    out.push_back(active[s * (active.size() - 1) / (want - 1)]);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> ts(n);
  for (std::size_t i = 0; i < n; ++i)
    ts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return ts;
}

// Trapezoid L^gamma of a sampled scalar function of time.
double time_lgamma(const std::vector<double>& ts, const std::vector<double>& v,
                   const Exponent& gamma) {
  if (gamma.is_inf()) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
  if (ts.size() < 2) throw validation_error("finite time exponent needs at least two nodes");
  const double ga = gamma.value();
  kahan_acc acc;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double w;
    if (i == 0)
      w = (ts[1] - ts[0]) / 2;
    else if (i + 1 == ts.size())
      w = (ts[i] - ts[i - 1]) / 2;
    else
      w = (ts[i + 1] - ts[i - 1]) / 2;
    acc.add(w * std::pow(v[i], ga));
  }
  return std::pow(acc.sum(), 1.0 / ga);
}

void apply_propagator(Field& spec, double t) {
  const GridSpec& g = spec.grid;
  const auto xi = lattice_xi(g);
  parallel_for(spec.v.size(), [&](std::size_t i) {
    int n[3];
    g.decode(i, n);
    double mu = 0.0;
    for (int ax = 0; ax < g.d; ++ax) {
      const double x = xi[static_cast<std::size_t>(n[ax])];
      mu += x * x;
    }
    spec.v[i] *= std::polar(1.0, -t * mu);
  });
}

}  // namespace

Exponent gamma_of_p(int d, const Exponent& p) {
  const Rat ig = inv_gamma_of_p(d, p);
  if (ig.is_zero()) return Exponent::infinity();
  return Exponent(Rat(ig.den, ig.num));
}

Rat inv_gamma_of_p(int d, const Exponent& p) {
  if (p < Exponent{2}) throw validation_error("gamma(p) needs p >= 2");
  return Rat(d) * (Rat(1, 2) - p.reciprocal()) * Rat(1, 2);
}

bool admissible(int d, const ExponentPair& pair) {
  if (pair.p < Exponent{2} || pair.gamma < Exponent{2}) return false;
  const Exponent gp = gamma_of_p(d, pair.p);
  if (pair.gamma < gp) return false;
  if (d == 2 && pair.gamma == Exponent{2} && pair.p.is_inf()) return false;
  return true;
}

void require_admissible(int d, const ExponentPair& pair) {
  if (!admissible(d, pair))
    throw validation_error("exponent pair (" + to_string(pair.gamma) + ", " +
                           to_string(pair.p) + ") is not admissible in d=" + std::to_string(d));
}

Rat pair_delta(int d, const ExponentPair& pair) {
  return Rat(2) * inv_gamma_of_p(d, pair.p) - Rat(2) * pair.gamma.reciprocal();
}

Field propagate(const Field& u0, double t) {
  if (u0.domain == Domain::spectral) {
    Field out = u0;
    apply_propagator(out, t);
    return out;
  }
  Field spec = dft(u0);
  apply_propagator(spec, t);
  return idft(spec);
}

Trajectory free_flow(const Field& u0, const std::vector<double>& ts) {
  Trajectory traj;
  traj.t = ts;
  traj.u.reserve(ts.size());
  for (double t : ts) traj.u.push_back(propagate(u0, t));
  traj.validate();
  return traj;
}

Field duhamel(const Trajectory& F, double t) {
  F.validate();
  if (F.size() == 0) throw validation_error("empty source trajectory");
  const GridSpec& g = F.u.front().grid;
  const Domain dom = F.u.front().domain;
  if (std::fabs(F.t.front()) > 1e-12)
    throw validation_error("source trajectory must start at t = 0");
  if (t < -1e-12) throw validation_error("Duhamel time must be nonnegative");

  if (F.size() == 1) {
    if (std::fabs(t) > 1e-12) throw validation_error("time outside the source trajectory");
    return Field::zeros(g, dom);
  }
  const double dt = F.t[1] - F.t[0];
  for (std::size_t i = 1; i < F.size(); ++i)
    if (std::fabs((F.t[i] - F.t[i - 1]) - dt) > 1e-9 * dt)
      throw validation_error("Duhamel needs a uniform time grid");
  const double pos = t / dt;
  const auto idx = static_cast<std::size_t>(std::llround(pos));
  if (idx >= F.size() || std::fabs(pos - static_cast<double>(idx)) > 1e-9)
    throw validation_error("Duhamel time must lie on a node of the source grid");
  Field acc = Field::zeros(g, Domain::spectral);
  if (idx == 0) return dom == Domain::spectral ? acc : idft(acc);

  for (std::size_t m = 0; m <= idx; ++m) {
    const double w = (m == 0 || m == idx) ? dt / 2 : dt;
    Field term = F.u[m].domain == Domain::spectral ? F.u[m] : dft(F.u[m]);
    apply_propagator(term, t - F.t[m]);
    for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += w * term.v[i];
  }
  return dom == Domain::spectral ? acc : idft(acc);
}

double t_wrap(const GridSpec& g, double sigma) {
  if (sigma <= 0.0) throw validation_error("Gaussian width must be positive");
  const double quarter = g.edge() / 4.0;
  if (quarter <= sigma)
    throw validation_error("torus too small: initial width already beyond a quarter edge");
  return sigma * std::sqrt(quarter * quarter - sigma * sigma);
}

RatioReport check_propagator_mj_bound(const WindowFamily& fam, const Corpus& corpus,
                                      const std::vector<int>& j_list, const Exponent& p,
                                      const Exponent& q, const std::vector<double>& t_list) {
  const GridSpec& g = corpus.config.grid;
  for (int j : j_list) require_valid_scale(g, j);
  const double e = std::fabs((Rat(g.d) * (Rat(1, 2) - p.reciprocal())).value());

  RatioReport rep;
  rep.check_id = "propagator_mj_bound";
  rep.params = "p=" + to_string(p) + " q=" + to_string(q);
  for (const CorpusEntry& ent : corpus.entries) {
    std::vector<double> base(j_list.size());
    for (std::size_t s = 0; s < j_list.size(); ++s)
      base[s] = mj_norm(fam, ent.f, j_list[s], p, q);
    for (double t : t_list) {
      const Field ut = propagate(ent.f, t);
      for (std::size_t s = 0; s < j_list.size(); ++s) {
        const int j = j_list[s];
        const double x = std::ldexp(t, 2 * j);
        const double weight = std::pow(std::sqrt(1.0 + x * x), e);
        const double num = mj_norm(fam, ut, j, p, q);
        rep.add(ent.name, istr("j", j), gstr("t", t), guarded_ratio(num, weight * base[s]));
      }
    }
  }
  return rep;
}

RatioReport check_dispersive_decay(const WindowFamily& fam, const Corpus& corpus,
                                   const ExponentPair& pair, const std::vector<int>& j_list,
                                   const std::vector<double>& t_list) {
  const GridSpec& g = corpus.config.grid;
  require_admissible(g.d, pair);
  for (int j : j_list) require_valid_scale(g, j);
  const double e2 = (Rat(2) * inv_gamma_of_p(g.d, pair.p)).value();
  const Exponent pd = pair.p.conjugate();

  RatioReport rep;
  rep.check_id = "dispersive_decay";
  rep.params = "gamma=" + to_string(pair.gamma) + " p=" + to_string(pair.p);
  for (const CorpusEntry& ent : corpus.entries) {
    for (double t : t_list) {
      const Field ut = propagate(ent.f, t);
      for (int j : j_list) {
        const auto ks = sample_indices(active_indices(fam, ent.f, j), 4);
        for (const auto& k : ks) {
          const double num = box_norm(fam, ut, j, k, pair.p);
          const double den = box_norm(fam, ent.f, j, k, pd);
          const double bound =
              std::min(std::pow(std::fabs(t), -e2), std::pow(2.0, 2 * j * e2));
          rep.add(ent.name, istr("j", j), kstr(k, g.d) + " " + gstr("t", t),
                  guarded_ratio(num, bound * den));
        }
      }
    }
  }
  return rep;
}

RatioReport check_strichartz_homogeneous(const WindowFamily& fam, const Corpus& corpus,
                                         const ExponentPair& pair,
                                         const std::vector<int>& j_list, double T,
                                         std::size_t nt) {
  const GridSpec& g = corpus.config.grid;
  require_admissible(g.d, pair);
  for (int j : j_list) require_valid_scale(g, j);
  if (T <= 0.0 || nt < 2) throw validation_error("need T > 0 and at least two time nodes");
  const auto ts = linspace(0.0, T, nt);
  const Rat gap = inv_gamma_of_p(g.d, pair.p) - pair.gamma.reciprocal();

  RatioReport rep;
  rep.check_id = "strichartz_homogeneous";
  rep.params = "gamma=" + to_string(pair.gamma) + " p=" + to_string(pair.p) + " " +
               gstr("T", T);
  for (const CorpusEntry& ent : corpus.entries) {
    std::vector<Field> traj;
    traj.reserve(nt);
    for (double t : ts) traj.push_back(propagate(ent.f, t));
    for (int j : j_list) {
      const auto ks = sample_indices(active_indices(fam, ent.f, j), 4);
      const double factor = std::pow(2.0, 2.0 * j * gap.value());
      for (const auto& k : ks) {
        std::vector<double> v(nt);
        for (std::size_t n = 0; n < nt; ++n) v[n] = box_norm(fam, traj[n], j, k, pair.p);
        const double lhs = time_lgamma(ts, v, pair.gamma);
        const double rhs = factor * box_norm(fam, ent.f, j, k, Exponent{2});
        rep.add(ent.name, istr("j", j), kstr(k, g.d), guarded_ratio(lhs, rhs));
      }
    }
  }
  return rep;
}

RatioReport check_strichartz_inhomogeneous(const WindowFamily& fam, const Corpus& corpus,
                                           const ExponentPair& pair1,
                                           const ExponentPair& pair2,
                                           const std::vector<int>& j_list, double T,
                                           std::size_t nt) {
  const GridSpec& g = corpus.config.grid;
  require_admissible(g.d, pair1);
  require_admissible(g.d, pair2);
  for (int j : j_list) require_valid_scale(g, j);
  if (T <= 0.0 || nt < 2) throw validation_error("need T > 0 and at least two time nodes");
  const auto ts = linspace(0.0, T, nt);
  const double dt = ts[1] - ts[0];
  const Rat gap = (inv_gamma_of_p(g.d, pair1.p) - pair1.gamma.reciprocal()) +
                  (inv_gamma_of_p(g.d, pair2.p) - pair2.gamma.reciprocal());
  const Exponent gamma_dual = pair1.gamma.conjugate();
  const Exponent p_dual = pair1.p.conjugate();

  RatioReport rep;
  rep.check_id = "strichartz_inhomogeneous";
  rep.params = "gamma=" + to_string(pair1.gamma) + " p=" + to_string(pair1.p) +
               " beta=" + to_string(pair2.gamma) + " r=" + to_string(pair2.p) + " " +
               gstr("T", T);
  for (const CorpusEntry& ent : corpus.entries) {
    // separable source F(tau) = sin^2(pi tau / T) * f
    std::vector<double> b(nt);
    for (std::size_t n = 0; n < nt; ++n) {
      const double s = std::sin(M_PI * ts[n] / T);
      b[n] = s * s;
    }
    std::vector<Field> F;
    F.reserve(nt);
    for (std::size_t n = 0; n < nt; ++n) {
      Field f = ent.f;
      for (auto& z : f.v) z *= b[n];
      F.push_back(std::move(f));
    }
    // A_n = trapezoid Duhamel integral up to t_n
    std::vector<Field> A;
    A.reserve(nt);
    for (std::size_t n = 0; n < nt; ++n) {
      Field acc = Field::zeros(g, Domain::spectral);
      for (std::size_t m = 0; m <= n; ++m) {
        if (n == 0) break;
        const double w = (m == 0 || m == n) ? dt / 2 : dt;
        Field term = F[m];
        apply_propagator(term, ts[n] - ts[m]);
        for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += w * term.v[i];
      }
      A.push_back(std::move(acc));
    }
    for (int j : j_list) {
      const auto ks = sample_indices(active_indices(fam, ent.f, j), 4);
      const double factor = std::pow(2.0, 2.0 * j * gap.value());
      for (const auto& k : ks) {
        std::vector<double> va(nt), vf(nt);
        for (std::size_t n = 0; n < nt; ++n) {
          va[n] = box_norm(fam, A[n], j, k, pair2.p);
          vf[n] = box_norm(fam, F[n], j, k, p_dual);
        }
        const double lhs = time_lgamma(ts, va, pair2.gamma);
        const double rhs = factor * time_lgamma(ts, vf, gamma_dual);
        rep.add(ent.name, istr("j", j), kstr(k, g.d), guarded_ratio(lhs, rhs));
      }
    }
  }
  return rep;
}

DecaySlopeFit decay_slope_fit(const Field& u0, const Exponent& p, double t_lo, double t_hi,
                              std::size_t nt) {
  if (!(0.0 < t_lo && t_lo < t_hi) || nt < 2)
    throw validation_error("slope fit needs 0 < t_lo < t_hi and at least two samples");
  DecaySlopeFit fit;
  fit.t.resize(nt);
  fit.norm.resize(nt);
  // geometric time ladder so the fit is uniform in log t
  for (std::size_t i = 0; i < nt; ++i)
    fit.t[i] = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (nt - 1));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < nt; ++i) {
    const Field ut = propagate(u0, fit.t[i]);
    fit.norm[i] = lp_norm(ut.domain == Domain::physical ? ut : idft(ut), p);
    if (fit.norm[i] <= 0.0) throw numeric_error("vanishing norm in decay fit");
    const double x = std::log(fit.t[i]), y = std::log(fit.norm[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const auto n = static_cast<double>(nt);
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.expected = -(Rat(2) * inv_gamma_of_p(u0.grid.d, p)).value();
  fit.rel_err = std::fabs(fit.slope - fit.expected) / std::fabs(fit.expected);
  return fit;
}

}  // namespace uniscale
