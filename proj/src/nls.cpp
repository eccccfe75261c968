#include "uniscale/nls.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "uniscale/common.hpp"
#include "uniscale/corpus.hpp"
#include "uniscale/decomp.hpp"

namespace uniscale {
namespace {

struct NLParams {
  int kappa;      // 0 marks the exponential form
  double lambda;
};

NLParams params_of(const Nonlinearity& nl) {
  if (const auto* pw = std::get_if<PowerNonlinearity>(&nl)) return {pw->kappa, pw->lambda};
  return {0, std::get<ExpNonlinearity>(nl).lambda};
}

double l2_norm(const Field& u) {
  return lp_norm(u.domain == Domain::physical ? u : idft(u), Exponent{2});
}

double sup_l2_diff(const std::vector<Field>& a, const std::vector<Field>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    kahan_acc acc;
    for (std::size_t n = 0; n < a[i].v.size(); ++n) acc.add(std::norm(a[i].v[n] - b[i].v[n]));
    const double vol = std::pow(a[i].grid.dx(), a[i].grid.d);
    m = std::max(m, std::sqrt(acc.sum() * vol));
  }
  return m;
}

// Tracked-norm evaluator.  Decomposition families are measured through the
// initial data's low-pass splitting pushed forward by the free flow, with
// the remainder merged into the j = 0 piece; the result is an explicit
// upper bound for the underlying quantity, nothing more.
class NormTracker {
 public:
  NormTracker(const WindowFamily& fam, const Field& u0, std::vector<NormSpec> specs)
      : fam_(fam), specs_(std::move(specs)) {
    const GridSpec& g = u0.grid;
    bool needs_dec = false;
    for (const auto& s : specs_) {
      s.validate(g.d);
      if (s.family == NormFamily::script_neg || s.family == NormFamily::script_dot)
        needs_dec = true;
    }
    if (needs_dec) {
      const ScaleRange r = scale_range(g);
      std::vector<int> scales;
      for (int j = 0; j >= std::max(r.j_min, -6); --j) scales.push_back(j);
      dec0_ = lowpass_decomposition(build_lowpass(fam_), dft_of(u0), scales);
    }
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& s : specs_) out.push_back(spec_name(s));
    return out;
  }

  std::vector<double> eval(const Field& u, double t) const {
    std::vector<double> out;
    out.reserve(specs_.size());
    for (const auto& s : specs_) {
      switch (s.family) {
        case NormFamily::feichtinger_s:
          out.push_back(modulation_norm(fam_, u, s.p, s.q, s.w.value()));
          break;
        case NormFamily::single_scale_j:
          out.push_back(mj_norm(fam_, u, s.j, s.p, s.q));
          break;
        case NormFamily::frak_neg:
        case NormFamily::frak_pos:
        case NormFamily::frak_dot:
          out.push_back(frak_norm(fam_, u, s));
          break;
        case NormFamily::script_pos:
          out.push_back(script_norm_upper(fam_, trivial_decomposition(u), s));
          break;
        case NormFamily::script_neg:
        case NormFamily::script_dot:
          out.push_back(script_norm_upper(fam_, pushed_dec(u, t), s));
          break;
      }
    }
    return out;
  }

  static std::string spec_name(const NormSpec& s) {
    std::string n = family_name(s.family);
    if (s.family == NormFamily::script_neg || s.family == NormFamily::script_pos ||
        s.family == NormFamily::script_dot)
      n += "_upper";
    n += "_w=" + to_string(s.w) + "_p=" + to_string(s.p) + "_q=" + to_string(s.q) +
         "_r=" + to_string(s.r);
    if (s.family == NormFamily::single_scale_j) n += "_j=" + std::to_string(s.j);
    return n;
  }

 private:
  static Field dft_of(const Field& f) { return f.domain == Domain::spectral ? f : dft(f); }

  Decomposition pushed_dec(const Field& u, double t) const {
    Decomposition out;
    Field spec_u = dft_of(u);
    Field rest = spec_u;
    for (std::size_t i = 0; i < dec0_.piece.size(); ++i) {
      Field p = propagate(dec0_.piece[i], t);
      for (std::size_t n = 0; n < rest.v.size(); ++n) rest.v[n] -= p.v[n];
      out.j.push_back(dec0_.j[i]);
      out.piece.push_back(std::move(p));
    }
    if (out.piece.empty()) return trivial_decomposition(spec_u);
    // scales were built descending from 0, so the remainder lands at j = 0
    for (std::size_t n = 0; n < rest.v.size(); ++n) out.piece.front().v[n] += rest.v[n];
    return out;
  }

  WindowFamily fam_;
  std::vector<NormSpec> specs_;
  Decomposition dec0_;
};

Field random_perturbation(const GridSpec& g, std::uint64_t seed, std::uint64_t index,
                          double target_l2) {
  CorpusRng rng(seed, index);
  Field spec = Field::zeros(g, Domain::spectral);
  const int band = std::max(1, g.nyquist() / 2);
  for (std::size_t i = 0; i < spec.v.size(); ++i) {
    int n[3];
    g.decode(i, n);
    bool keep = true;
    for (int ax = 0; ax < g.d; ++ax)
      if (std::abs(g.signed_mode(n[ax])) > band) keep = false;
    if (keep) spec.v[i] = cplx(rng.gauss(), rng.gauss());
  }
  const double nrm = l2_norm(spec);
  if (nrm > 0.0)
    for (auto& z : spec.v) z *= target_l2 / nrm;
  return idft(spec);
}

}  // namespace

Field nonlinearity_eval(const Field& u, const Nonlinearity& nl) {
  if (u.domain != Domain::physical)
    throw validation_error("nonlinearity acts pointwise on a physical-domain field");
  Field out = u;
  if (const auto* pw = std::get_if<PowerNonlinearity>(&nl)) {
    if (pw->kappa < 1) throw validation_error("power nonlinearity needs kappa >= 1");
    for (auto& z : out.v) {
      const double a2 = std::norm(z);
      const double mag = pw->lambda * std::pow(a2, pw->kappa);
      if (!std::isfinite(mag)) throw numeric_error("power nonlinearity overflow");
      z *= mag;
    }
    return out;
  }
  const double lam = std::get<ExpNonlinearity>(nl).lambda;
  for (auto& z : out.v) {
    const double arg = lam * std::norm(z);
    if (arg > 700.0) throw numeric_error("exponential nonlinearity overflow");
    z *= std::expm1(arg);
  }
  return out;
}

void NLSProblem::validate() const {
  if (const auto* pw = std::get_if<PowerNonlinearity>(&nonlinearity))
    if (pw->kappa < 1) throw validation_error("kappa must be >= 1");
  if (!(T > 0.0)) throw validation_error("horizon T must be positive");
  if (u0.grid != grid) throw validation_error("initial data does not live on the problem grid");
}

void SolverConfig::validate() const {
  if (steps < 8) throw validation_error("need at least 8 time steps per window");
  if (windows < 1) throw validation_error("need at least one time window");
  if (!(tol > 0.0)) throw validation_error("tolerance must be positive");
  if (max_iters < 1) throw validation_error("need at least one Picard iteration");
}

PicardResult picard_solve(const NLSProblem& prob, const SolverConfig& cfg) {
  prob.validate();
  cfg.validate();
  const WindowFamily fam = build_window();
  const GridSpec& g = prob.grid;
  const NLParams nl = params_of(prob.nonlinearity);
  const std::size_t S = cfg.steps;
  const double W = prob.T / static_cast<double>(cfg.windows);
  const double dt = W / static_cast<double>(S);

  PicardResult res;
  const double u0n = l2_norm(prob.u0);
  res.ball_radius = 2.0 * cfg.ball_constant * u0n;
  if (nl.kappa >= 1)
    res.safety_product =
        cfg.ball_constant * std::pow(res.ball_radius, 2.0 * nl.kappa);
  else
    res.safety_product =
        cfg.ball_constant * std::expm1(std::fabs(nl.lambda) * res.ball_radius * res.ball_radius);

  const NormTracker tracker(fam, prob.u0, cfg.track);
  res.history.tracked_names = tracker.names();
  res.history.tracked.resize(cfg.track.size());

  Field u_start = prob.u0.domain == Domain::physical ? prob.u0 : idft(prob.u0);
  auto record = [&](double t, const Field& u) {
    res.history.t.push_back(t);
    res.history.l2.push_back(l2_norm(u));
    res.history.m0_21.push_back(mj_norm(fam, u, 0, Exponent{2}, Exponent{1}));
    const auto tr = tracker.eval(u, t);
    for (std::size_t i = 0; i < tr.size(); ++i) res.history.tracked[i].push_back(tr[i]);
  };
  res.traj.t.push_back(0.0);
  res.traj.u.push_back(u_start);
  record(0.0, u_start);

  std::vector<double> tau(S + 1);
  for (std::size_t m = 0; m <= S; ++m) tau[m] = dt * static_cast<double>(m);

  for (std::size_t w = 0; w < cfg.windows; ++w) {
    const double t0 = W * static_cast<double>(w);
    std::vector<Field> lin;
    lin.reserve(S + 1);
    for (std::size_t m = 0; m <= S; ++m) lin.push_back(propagate(u_start, tau[m]));
    std::vector<Field> cur = lin;

    bool window_ok = false;
    std::size_t iters = 0;
    double inc_rel = 0.0;
    try {
      for (iters = 1; iters <= cfg.max_iters; ++iters) {
        Trajectory Fr;
        Fr.t = tau;
        Fr.u.reserve(S + 1);
        for (std::size_t m = 0; m <= S; ++m)
          Fr.u.push_back(nonlinearity_eval(cur[m], prob.nonlinearity));
        std::vector<Field> next(S + 1, Field::zeros(g, Domain::physical));
        next[0] = lin[0];
        for (std::size_t m = 1; m <= S; ++m) {
          Field integ = duhamel(Fr, tau[m]);
          next[m] = lin[m];
          for (std::size_t i = 0; i < next[m].v.size(); ++i)
            next[m].v[i] -= cplx(0.0, 1.0) * integ.v[i];
        }
        double scale = 0.0;
        for (std::size_t m = 0; m <= S; ++m) scale = std::max(scale, l2_norm(next[m]));
        if (!std::isfinite(scale)) throw numeric_error("Picard iterate lost finiteness");
        if (scale > res.ball_radius) res.ball_exceeded = true;
        const double inc = sup_l2_diff(next, cur);
        inc_rel = scale > 0.0 ? inc / scale : inc;
        cur = std::move(next);
        if (iters == 1) res.first_increment.push_back(inc_rel);
        if (inc_rel < cfg.tol) {
          window_ok = true;
          break;
        }
      }
    } catch (const numeric_error& e) {
      res.blowup = true;
      res.converged = false;
      res.diagnostic = std::string("window ") + std::to_string(w) + ": " + e.what();
      break;
    }
    res.iterations.push_back(std::min(iters, cfg.max_iters));
    res.final_increment.push_back(inc_rel);
    if (!window_ok) {
      res.converged = false;
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "window %zu: no convergence after %zu iterations (increment %.3e)", w,
                    cfg.max_iters, inc_rel);
      res.diagnostic = buf;
      break;
    }
    for (std::size_t m = 1; m <= S; ++m) {
      const double t = t0 + tau[m];
      res.traj.t.push_back(t);
      res.traj.u.push_back(cur[m]);
      record(t, cur[m]);
    }
    u_start = cur[S];
    res.windows_done = w + 1;
  }
  res.traj.validate();
  res.spacetime.emplace_back(
      "W_sup_j0_p2_q1",
      spacetime_w_norm(fam, res.traj, 0, Exponent::infinity(), Exponent{2}, Exponent{1}));
  return res;
}

Trajectory splitstep_reference(const NLSProblem& prob, double dt) {
  prob.validate();
  if (!(dt > 0.0)) throw validation_error("split-step needs dt > 0");
  const auto steps =
      static_cast<std::size_t>(std::max<long long>(1, std::llround(prob.T / dt)));
  const double h = prob.T / static_cast<double>(steps);
  const NLParams nl = params_of(prob.nonlinearity);

  Trajectory traj;
  Field u = prob.u0.domain == Domain::physical ? prob.u0 : idft(prob.u0);
  traj.t.push_back(0.0);
  traj.u.push_back(u);
  for (std::size_t n = 1; n <= steps; ++n) {
    u = propagate(u, h / 2);
    // exact solution of i u_t = F(u): phase rotation, modulus invariant
    for (auto& z : u.v) {
      const double a2 = std::norm(z);
      double gphase;
      if (nl.kappa >= 1) {
        gphase = nl.lambda * std::pow(a2, nl.kappa);
      } else {
        const double arg = nl.lambda * a2;
        if (arg > 700.0) throw numeric_error("exponential nonlinearity overflow");
        gphase = std::expm1(arg);
      }
      if (!std::isfinite(gphase)) throw numeric_error("nonlinear phase overflow");
      z *= std::polar(1.0, -gphase * h);
    }
    u = propagate(u, h / 2);
    traj.t.push_back(h * static_cast<double>(n));
    traj.u.push_back(u);
  }
  traj.validate();
  return traj;
}

ContractionReport contraction_audit(const NLSProblem& prob, const SolverConfig& cfg,
                                    const std::vector<double>& amplitudes, std::size_t pairs,
                                    std::uint64_t seed) {
  prob.validate();
  cfg.validate();
  if (amplitudes.empty() || pairs == 0)
    throw validation_error("contraction audit needs amplitudes and pairs");
  const GridSpec& g = prob.grid;
  const NLParams nl = params_of(prob.nonlinearity);
  const std::size_t S = cfg.steps;
  const double W = prob.T / static_cast<double>(cfg.windows);
  std::vector<double> tau(S + 1);
  for (std::size_t m = 0; m <= S; ++m) tau[m] = W * static_cast<double>(m) / static_cast<double>(S);

  ContractionReport rep;
  rep.expected_slope = 2.0 * std::max(1, nl.kappa);

  for (double a : amplitudes) {
    Field ua = prob.u0.domain == Domain::physical ? prob.u0 : idft(prob.u0);
    for (auto& z : ua.v) z *= a;
    const double M = 2.0 * cfg.ball_constant * l2_norm(ua);
    std::vector<Field> lin;
    lin.reserve(S + 1);
    for (std::size_t m = 0; m <= S; ++m) lin.push_back(propagate(ua, tau[m]));

    auto apply_T = [&](const std::vector<Field>& traj_u) {
      Trajectory Fr;
      Fr.t = tau;
      for (std::size_t m = 0; m <= S; ++m)
        Fr.u.push_back(nonlinearity_eval(traj_u[m], prob.nonlinearity));
      std::vector<Field> out(S + 1, Field::zeros(g, Domain::physical));
      out[0] = lin[0];
      for (std::size_t m = 1; m <= S; ++m) {
        Field integ = duhamel(Fr, tau[m]);
        out[m] = lin[m];
        for (std::size_t i = 0; i < out[m].v.size(); ++i)
          out[m].v[i] -= cplx(0.0, 1.0) * integ.v[i];
      }
      return out;
    };

    double factor = 0.0;
    for (std::size_t pr = 0; pr < pairs; ++pr) {
      // same directions at every amplitude, so the factor scales cleanly
      const double eps = 0.1 * (M > 0.0 ? M : 1.0);
      const Field p1 = random_perturbation(g, seed, 2 * pr, eps);
      const Field p2 = random_perturbation(g, seed, 2 * pr + 1, eps);
      std::vector<Field> u = lin, v = lin;
      for (std::size_t m = 0; m <= S; ++m)
        for (std::size_t i = 0; i < u[m].v.size(); ++i) {
          u[m].v[i] += p1.v[i];
          v[m].v[i] += p2.v[i];
        }
      const double den = sup_l2_diff(u, v);
      const double num = sup_l2_diff(apply_T(u), apply_T(v));
      if (den > 0.0) factor = std::max(factor, num / den);
    }
    rep.amplitude.push_back(a);
    rep.factor.push_back(factor);

    NLSProblem scaled = prob;
    scaled.u0 = ua;
    scaled.T = W;
    SolverConfig one = cfg;
    one.windows = 1;
    const PicardResult run = picard_solve(scaled, one);
    rep.observed_iters.push_back(run.iterations.empty() ? cfg.max_iters : run.iterations[0]);
    double inc = run.first_increment.empty() ? 0.0 : run.first_increment[0];
    std::size_t n = 1;
    while (inc > cfg.tol && n < cfg.max_iters) {
      inc *= factor;
      ++n;
      if (factor >= 1.0) {
        n = cfg.max_iters;
        break;
      }
    }
    rep.predicted_iters.push_back(n);
  }

  rep.factor_at_base = rep.factor.front();
  for (std::size_t i = 0; i < rep.amplitude.size(); ++i)
    if (rep.amplitude[i] == 1.0) rep.factor_at_base = rep.factor[i];
  rep.contracting = rep.factor_at_base <= 0.5;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < rep.amplitude.size(); ++i) {
    if (!(rep.factor[i] > 0.0)) continue;
    const double x = std::log(rep.amplitude[i]), y = std::log(rep.factor[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) {
    const auto n = static_cast<double>(cnt);
    rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.rel_err = std::fabs(rep.slope - rep.expected_slope) / rep.expected_slope;
  }
  return rep;
}

BlowupReport blowup_monitor(const PicardResult& res, const WindowFamily& fam,
                            const NormSpec& spec, double threshold) {
  if (res.traj.size() == 0) throw validation_error("empty trajectory");
  const NormTracker tracker(fam, res.traj.u.front(), {spec});
  BlowupReport rep;
  rep.t_lower_bound = res.traj.t.back();
  for (std::size_t i = 0; i < res.traj.size(); ++i) {
    const double v = tracker.eval(res.traj.u[i], res.traj.t[i])[0];
    if (i == 0) rep.initial = v;
    rep.peak = std::max(rep.peak, v);
    if (!rep.flagged && v > threshold) {
      rep.flagged = true;
      rep.t_flag = res.traj.t[i];
      rep.note = "tracked norm crossed the threshold";
    }
  }
  if (!rep.flagged && (!res.converged || res.blowup)) {
    rep.flagged = true;
    rep.t_flag = res.traj.t.back();
    rep.note = res.blowup ? "solver overflow: " + res.diagnostic
                          : "Picard failed to converge: " + res.diagnostic;
  }
  return rep;
}

SupercriticalFamily supercritical_family(int J, int kappa, const GridSpec& g) {
  if (J < 10) throw validation_error("the ladder starts at scale -11; need J >= 10");
  if (kappa < 0) throw validation_error("kappa must be 0 (plain) or >= 1");
  SupercriticalFamily fam;
  fam.f = Field::zeros(g, Domain::spectral);
  fam.J = J;
  fam.kappa = kappa;
  if (J == 10) return fam;  // empty sum
  if (J > g.nyquist() - 1)
    throw validation_error("grid cannot resolve the ladder down to frequency -J");
  for (int j = -11; j >= -J; --j) {
    const double aj = std::fabs(static_cast<double>(j));
    const double lg = std::log(aj);
    double amp = std::pow(2.0, aj * g.d) / (aj * lg * lg);
    if (kappa >= 1) amp *= std::pow(2.0, static_cast<double>(j) / kappa);
    Field piece = Field::zeros(g, Domain::spectral);
    int n[3] = {0, 0, 0};
    n[0] = j * g.P + g.N;  // signed mode j*P is negative
    piece.v[g.encode(n)] = amp;
    for (std::size_t i = 0; i < fam.f.v.size(); ++i) fam.f.v[i] += piece.v[i];
    fam.dec.j.push_back(j);
    fam.dec.piece.push_back(std::move(piece));
    fam.amp.push_back(amp);
  }
  return fam;
}

SupercriticalReport verify_supercritical_norms(const std::vector<int>& J_list,
                                               const std::vector<Exponent>& ptilde_list,
                                               const GridSpec& g, int kappa) {
  if (J_list.empty() || ptilde_list.empty())
    throw validation_error("need at least one J and one ptilde");
  const WindowFamily fam = build_window();
  SupercriticalReport rep;
  rep.grid = g;
  rep.kappa = kappa;
  NormSpec upper_spec;
  upper_spec.family = NormFamily::script_neg;
  upper_spec.p = Exponent{1};
  upper_spec.q = Exponent{1};
  upper_spec.r = Exponent{1};
  upper_spec.w = Rat(g.d);  // weight d/p at p = 1
  for (const Exponent& pt : ptilde_list) {
    double prev_m0 = 0.0, prev_upper = 0.0;
    bool have_prev = false;
    for (int J : J_list) {
      const SupercriticalFamily sf = supercritical_family(J, kappa, g);
      SupercriticalRow row;
      row.J = J;
      row.ptilde = pt;
      row.m0 = sf.dec.size() == 0 ? 0.0 : modulation_norm(fam, sf.f, pt, Exponent{1}, 0.0);
      row.upper =
          sf.dec.size() == 0 ? 0.0 : script_norm_upper(fam, sf.dec, upper_spec, false);
      if (have_prev) {
        row.upper_increment = row.upper - prev_upper;
        row.m0_ratio = prev_m0 > 0.0 ? row.m0 / prev_m0 : 0.0;
      }
      if (J > 10) {
        // growth target of the ladder itself: amplitude of the deepest rung
        const double lj = std::log(static_cast<double>(J));
        row.predicted =
            std::pow(2.0, static_cast<double>(J) * g.d) / (static_cast<double>(J) * lj * lj);
      }
      prev_m0 = row.m0;
      prev_upper = row.upper;
      have_prev = true;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace uniscale
