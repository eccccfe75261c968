// Command-line front end: every module operation behind one binary with
// reproducible, machine-readable outputs.  Exit codes: 0 success, 2 invalid
// input, 3 numeric failure (overflow / non-convergence).

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "uniscale/common.hpp"
#include "uniscale/corpus.hpp"
#include "uniscale/decomp.hpp"
#include "uniscale/grid.hpp"
#include "uniscale/harness.hpp"
#include "uniscale/io.hpp"
#include "uniscale/nls.hpp"
#include "uniscale/norms.hpp"
#include "uniscale/report.hpp"
#include "uniscale/schrodinger.hpp"
#include "uniscale/window.hpp"

using namespace uniscale;

namespace {

std::vector<int> parse_j_range(const std::string& s) {
  const auto dots = s.find("..");
  std::vector<int> out;
  if (dots == std::string::npos) {
    out.push_back(std::stoi(s));
    return out;
  }
  const int lo = std::stoi(s.substr(0, dots));
  const int hi = std::stoi(s.substr(dots + 2));
  if (lo > hi) throw validation_error("scale range must be lo..hi with lo <= hi");
  for (int j = lo; j <= hi; ++j) out.push_back(j);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// "family:w:p:q:r" or "family:w:p:q:r:j"
NormSpec parse_norm_spec(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() < 5) throw validation_error("norm spec needs family:w:p:q:r[:j]");
  NormSpec spec;
  spec.family = parse_family(parts[0]);
  spec.w = parse_rat(parts[1]);
  spec.p = parse_exponent(parts[2]);
  spec.q = parse_exponent(parts[3]);
  spec.r = parse_exponent(parts[4]);
  if (parts.size() > 5) spec.j = std::stoi(parts[5]);
  return spec;
}

GridSpec make_grid(int d, int N, int P) { return GridSpec(d, N, P); }

// Scales used when a decomposition family needs a concrete splitting.
std::vector<int> default_dec_scales(const GridSpec& g, NormFamily fam) {
  const ScaleRange r = scale_range(g);
  std::vector<int> scales;
  if (fam == NormFamily::script_pos) {
    for (int j = std::min(r.j_max, 2); j >= 0; --j) scales.push_back(j);
  } else {
    for (int j = 0; j >= std::max(r.j_min, -6); --j) scales.push_back(j);
  }
  return scales;
}

int run_window_check(int d, int N, int P, std::uint64_t seed) {
  const GridSpec g = make_grid(d, N, P);
  const WindowFamily fam = build_window();
  const ScaleRange r = scale_range(g);

  CorpusConfig cc;
  cc.grid = g;
  cc.seed = seed;
  cc.count = 1;
  const Field f = make_corpus(cc).entries[0].f;

  double worst_pou = 0.0, worst_recon = 0.0, worst_orth = 0.0;
  for (int j = r.j_min; j <= r.j_max; ++j) {
    // shift-sum of the window along each axis at every lattice frequency
    double pou = 0.0;
    const double scale = std::ldexp(1.0, -j);
    for (int m = -N / 2; m < N / 2; ++m) {
      const double t = scale * (static_cast<double>(m) / P);
      double s = 0.0;
      for (int k = static_cast<int>(std::ceil(t - 0.75)); k <= static_cast<int>(std::floor(t + 0.75));
           ++k)
        s += fam.h(t - k);
      pou = std::max(pou, std::fabs(s - 1.0));
    }
    const Field rec = reconstruct(fam, f, j);
    double recon = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < rec.v.size(); ++i) {
      recon = std::max(recon, std::abs(rec.v[i] - f.v[i]));
      ref = std::max(ref, std::abs(f.v[i]));
    }
    recon = ref > 0.0 ? recon / ref : recon;
    const double orth = almost_orthogonality_check(fam, f, j, 64);
    std::printf("j=%d pou=%s recon=%s orth=%s\n", j, fmt17(pou).c_str(), fmt17(recon).c_str(),
                fmt17(orth).c_str());
    worst_pou = std::max(worst_pou, pou);
    worst_recon = std::max(worst_recon, recon);
    worst_orth = std::max(worst_orth, orth);
  }
  std::printf("worst pou=%s recon=%s orth=%s\n", fmt17(worst_pou).c_str(),
              fmt17(worst_recon).c_str(), fmt17(worst_orth).c_str());
  return 0;
}

int run_decompose(const std::string& in, int j, const std::string& p_text,
                  const std::string& out) {
  const Field f = read_ufd1_file(in);
  const Field spec = f.domain == Domain::spectral ? f : dft(f);
  const WindowFamily fam = build_window();
  require_valid_scale(f.grid, j);
  const Exponent p = parse_exponent(p_text);
  const auto ks = active_indices(fam, spec, j);

  std::string csv = "k,norm\n";
  for (const auto& k : ks) {
    std::string key;
    for (int ax = 0; ax < f.grid.d; ++ax)
      key += (ax ? "_" : "") + std::to_string(k[static_cast<std::size_t>(ax)]);
    csv += key + "," + fmt17(box_norm(fam, spec, j, k, p)) + "\n";
  }
  if (out.empty())
    std::fputs(csv.c_str(), stdout);
  else
    write_text_file(out, csv);

  const Field rec = reconstruct(fam, f, j);
  double recon = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < rec.v.size(); ++i) {
    recon = std::max(recon, std::abs(rec.v[i] - f.v[i]));
    ref = std::max(ref, std::abs(f.v[i]));
  }
  std::fprintf(stderr, "boxes=%zu reconstruction=%s\n", ks.size(),
               fmt17(ref > 0.0 ? recon / ref : recon).c_str());
  return 0;
}

int run_norm(const std::string& in, const std::string& spec_text) {
  const Field f = read_ufd1_file(in);
  const NormSpec spec = parse_norm_spec(spec_text);
  spec.validate(f.grid.d);
  const WindowFamily fam = build_window();
  double value = 0.0;
  switch (spec.family) {
    case NormFamily::feichtinger_s:
      value = modulation_norm(fam, f, spec.p, spec.q, spec.w.value());
      break;
    case NormFamily::single_scale_j:
      value = mj_norm(fam, f, spec.j, spec.p, spec.q);
      break;
    case NormFamily::frak_neg:
    case NormFamily::frak_pos:
    case NormFamily::frak_dot:
      value = frak_norm(fam, f, spec);
      break;
    default: {
      // decomposition families: report the upper bound from the low-pass
      // splitting (the underlying norm is an infimum over splittings)
      const Field spec_f = f.domain == Domain::spectral ? f : dft(f);
      const Decomposition dec = lowpass_decomposition(
          build_lowpass(fam), spec_f, default_dec_scales(f.grid, spec.family));
      value = script_norm_upper(fam, dec, spec);
      break;
    }
  }
  std::printf("%s\n", fmt17(value).c_str());
  return 0;
}

int run_harness(int d, int N, int P, std::uint64_t seed, std::size_t count,
                const std::string& out) {
  HarnessConfig cfg;
  cfg.grid = make_grid(d, N, P);
  cfg.seed = seed;
  if (count > 0) cfg.corpus_count = count;
  const auto reports = run_all(cfg);

  write_text_file(out, reports_to_json(reports));
  std::string csv_path = out;
  const auto dot = csv_path.rfind(".json");
  if (dot != std::string::npos && dot + 5 == csv_path.size())
    csv_path = csv_path.substr(0, dot) + ".csv";
  else
    csv_path += ".csv";
  write_text_file(csv_path, reports_to_csv(reports));

  bool all_pass = true;
  for (const auto& rep : reports) {
    std::printf("%-28s %s max=%s spread=%s\n", rep.check_id.c_str(),
                rep.pass ? "pass" : "FAIL", fmt17(rep.max_ratio).c_str(),
                fmt17(rep.spread).c_str());
    all_pass = all_pass && rep.pass;
  }
  std::printf("%s (%zu checks) -> %s, %s\n", all_pass ? "all pass" : "FAILURES",
              reports.size(), out.c_str(), csv_path.c_str());
  return 0;
}

int run_schrodinger_check(const std::string& pair_text, double T, const std::string& j_text,
                          int d, int N, int P, std::uint64_t seed, std::size_t count,
                          std::size_t nt, const std::string& out) {
  const auto parts = split(pair_text, ',');
  if (parts.size() != 2) throw validation_error("--pair needs gamma,p");
  const ExponentPair pair{parse_exponent(parts[0]), parse_exponent(parts[1])};
  const GridSpec g = make_grid(d, N, P);
  require_admissible(g.d, pair);
  const auto j_list = parse_j_range(j_text);

  CorpusConfig cc;
  cc.grid = g;
  cc.seed = seed;
  cc.count = count;
  const Corpus corpus = make_corpus(cc);
  const WindowFamily fam = build_window();

  const std::vector<double> t_list{0.0, T / 4.0, T / 2.0, T};
  std::vector<RatioReport> reports;
  reports.push_back(
      check_propagator_mj_bound(fam, corpus, j_list, pair.p, Exponent{2}, t_list));
  reports.push_back(check_dispersive_decay(fam, corpus, pair, j_list, t_list));
  reports.push_back(check_strichartz_homogeneous(fam, corpus, pair, j_list, T, nt));
  reports.push_back(check_strichartz_inhomogeneous(fam, corpus, pair, pair, j_list, T, nt));
  for (auto& rep : reports) rep.finalize(4.0);

  write_text_file(out, reports_to_csv(reports));
  std::printf("t_wrap(sigma=1)=%s\n", fmt17(t_wrap(g, 1.0)).c_str());
  for (const auto& rep : reports)
    std::printf("%-28s rows=%zu max=%s spread=%s finite=%d\n", rep.check_id.c_str(),
                rep.rows.size(), fmt17(rep.max_ratio).c_str(), fmt17(rep.spread).c_str(),
                rep.finite ? 1 : 0);
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw validation_error("cannot open config " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

int run_nls(const std::string& config_path) {
  const auto kv = read_config(config_path);
  auto get = [&](const std::string& k, const std::string& dflt) {
    const auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  };

  const int d = std::stoi(get("d", "1"));
  const int N = std::stoi(get("N", "256"));
  const int P = std::stoi(get("P", "8"));
  const GridSpec g = make_grid(d, N, P);

  NLSProblem prob;
  prob.grid = g;
  prob.T = std::stod(get("T", "0.5"));
  const int kappa = std::stoi(get("kappa", "1"));
  const double lambda = std::stod(get("lambda", "1"));
  const std::string nl = get("nonlinearity", "power");
  if (nl == "power")
    prob.nonlinearity = PowerNonlinearity{kappa, lambda};
  else if (nl == "exp")
    prob.nonlinearity = ExpNonlinearity{lambda};
  else
    throw validation_error("nonlinearity must be power or exp");

  const std::string u0 = get("u0", "gaussian:0.5,1.0");
  if (u0.rfind("gaussian:", 0) == 0) {
    const auto parts = split(u0.substr(9), ',');
    if (parts.size() != 2) throw validation_error("u0=gaussian:amp,width");
    const double amp = std::stod(parts[0]), width = std::stod(parts[1]);
    if (width <= 0.0) throw validation_error("gaussian width must be positive");
    prob.u0 = Field::zeros(g, Domain::physical);
    const double c = g.edge() / 2.0;
    for (std::size_t i = 0; i < prob.u0.v.size(); ++i) {
      int n[3];
      g.decode(i, n);
      double q = 0.0;
      for (int ax = 0; ax < g.d; ++ax) {
        const double x = g.dx() * n[ax] - c;
        q += x * x;
      }
      prob.u0.v[i] = amp * std::exp(-q / (2.0 * width * width));
    }
  } else if (u0.rfind("supercritical:", 0) == 0) {
    const auto parts = split(u0.substr(14), ',');
    if (parts.size() != 2) throw validation_error("u0=supercritical:J,mode");
    const int J = std::stoi(parts[0]);
    int tilt = 0;
    if (parts[1] == "kappa")
      tilt = kappa;
    else if (parts[1] != "plain")
      throw validation_error("supercritical mode must be plain or kappa");
    prob.u0 = idft(supercritical_family(J, tilt, g).f);
  } else {
    prob.u0 = read_ufd1_file(u0);
    if (prob.u0.grid != g) throw validation_error("u0 file grid does not match config");
    if (prob.u0.domain == Domain::spectral) prob.u0 = idft(prob.u0);
  }

  SolverConfig cfg;
  cfg.windows = static_cast<std::size_t>(std::stoul(get("windows", "1")));
  cfg.steps = static_cast<std::size_t>(std::stoul(get("steps", "16")));
  cfg.tol = std::stod(get("tol", "1e-10"));
  cfg.max_iters = static_cast<std::size_t>(std::stoul(get("max_iters", "50")));
  for (const auto& item : split(get("track", ""), ';'))
    if (!item.empty()) cfg.track.push_back(parse_norm_spec(item));

  const PicardResult res = picard_solve(prob, cfg);

  const std::string prefix = get("out_prefix", "nls");
  // snapshots at window boundaries
  const std::size_t S = cfg.steps;
  for (std::size_t w = 0; w <= res.windows_done; ++w) {
    const std::size_t idx = w * S;
    if (idx >= res.traj.size()) break;
    char name[64];
    std::snprintf(name, sizeof name, "_snap_%03zu.ufd1", w);
    write_ufd1_file(prefix + name, res.traj.u[idx]);
  }
  std::string csv = "t,L2,M0_21";
  for (const auto& n : res.history.tracked_names) csv += "," + n;
  csv += "\n";
  for (std::size_t i = 0; i < res.history.t.size(); ++i) {
    csv += fmt17(res.history.t[i]) + "," + fmt17(res.history.l2[i]) + "," +
           fmt17(res.history.m0_21[i]);
    for (const auto& series : res.history.tracked) csv += "," + fmt17(series[i]);
    csv += "\n";
  }
  write_text_file(prefix + "_history.csv", csv);

  std::printf("windows_done=%zu converged=%d blowup=%d ball=%s safety=%s\n", res.windows_done,
              res.converged ? 1 : 0, res.blowup ? 1 : 0, fmt17(res.ball_radius).c_str(),
              fmt17(res.safety_product).c_str());
  for (const auto& st : res.spacetime)
    std::printf("%s=%s\n", st.first.c_str(), fmt17(st.second).c_str());
  if (!res.converged) {
    std::fprintf(stderr, "%s\n", res.diagnostic.c_str());
    return 3;
  }
  return 0;
}

int run_supercritical(int J, const std::string& ptilde_text, int d, int N, int P, int kappa,
                      const std::string& out) {
  std::vector<int> J_list;
  if (J >= 14)
    for (int j = 14; j <= J; j += 4) J_list.push_back(j);
  else
    J_list.push_back(J);
  std::vector<Exponent> pts;
  for (const auto& s : split(ptilde_text, ',')) pts.push_back(parse_exponent(s));

  const auto rep = verify_supercritical_norms(J_list, pts, make_grid(d, N, P), kappa);
  std::string csv = "J,ptilde,m0,upper,upper_increment,m0_ratio,predicted\n";
  for (const auto& row : rep.rows)
    csv += std::to_string(row.J) + "," + to_string(row.ptilde) + "," + fmt17(row.m0) + "," +
           fmt17(row.upper) + "," + fmt17(row.upper_increment) + "," + fmt17(row.m0_ratio) +
           "," + fmt17(row.predicted) + "\n";
  if (out.empty())
    std::fputs(csv.c_str(), stdout);
  else
    write_text_file(out, csv);
  return 0;
}

int run_regime(int d, const std::string& p_text, const std::string& q_text,
               const std::string& w_text, const std::string& family_text,
               const std::string& table, int res) {
  const NormFamily family = parse_family(family_text);
  const Exponent p = parse_exponent(p_text), q = parse_exponent(q_text);
  const Rat w = parse_rat(w_text);

  if (!table.empty()) {
    const auto rows = region_table(d, family, w, res);
    std::string csv = "inv_p,inv_q,regime,boundary\n";
    for (const auto& row : rows)
      csv += to_string(row.inv_p) + "," + to_string(row.inv_q) + "," + row.regime + "," +
             (row.boundary ? "1" : "0") + "\n";
    write_text_file(table, csv);
    std::printf("wrote %zu rows to %s\n", rows.size(), table.c_str());
    return 0;
  }

  switch (family) {
    case NormFamily::frak_neg:
    case NormFamily::frak_pos:
    case NormFamily::frak_dot:
      std::printf("%s\n", regime_name(regime_classify(d, p, q, w, family)));
      break;
    case NormFamily::script_neg:
    case NormFamily::script_pos:
    case NormFamily::script_dot:
      std::printf("%s\n", regime_name(mu_regime_classify(d, p, q, w, family)));
      break;
    default:
      throw validation_error("regime classification needs a frak or script family");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frequency-uniform decomposition toolkit"};
  app.require_subcommand(1);

  int d = 1, N = 2048, P = 64;
  std::uint64_t seed = 1;
  std::size_t count = 0;

  auto* wc = app.add_subcommand("window-check", "window partition and reconstruction checks");
  wc->add_option("--d", d);
  wc->add_option("--N", N);
  wc->add_option("--P", P);
  wc->add_option("--seed", seed);

  auto* de = app.add_subcommand("decompose", "per-box norms of a field at one scale");
  std::string in_path, out_path, p_text = "2";
  int j_single = 0;
  de->add_option("--in", in_path)->required();
  de->add_option("--j", j_single)->required();
  de->add_option("--p", p_text);
  de->add_option("--out", out_path);

  auto* no = app.add_subcommand("norm", "evaluate a norm (or its decomposition upper bound)");
  std::string spec_text;
  no->add_option("--in", in_path)->required();
  no->add_option("--spec", spec_text, "family:w:p:q:r[:j]")->required();

  auto* ha = app.add_subcommand("harness", "run every registered inequality check");
  std::string harness_out = "report.json";
  ha->add_option("--d", d);
  ha->add_option("--N", N);
  ha->add_option("--P", P);
  ha->add_option("--seed", seed);
  ha->add_option("--count", count);
  ha->add_option("--out", harness_out);

  auto* sc = app.add_subcommand("schrodinger-check", "dispersive and space-time bound checks");
  std::string pair_text = "inf,2", j_text = "-3..0", sc_out = "schrodinger.csv";
  double T = 2.0;
  std::size_t nt = 9;
  int sd = 1, sN = 512, sP = 16;
  sc->add_option("--pair", pair_text, "gamma,p");
  sc->add_option("--T", T);
  sc->add_option("--j", j_text, "scale list lo..hi");
  sc->add_option("--d", sd);
  sc->add_option("--N", sN);
  sc->add_option("--P", sP);
  sc->add_option("--seed", seed);
  sc->add_option("--nt", nt);
  sc->add_option("--out", sc_out);

  auto* nr = app.add_subcommand("nls-run", "Picard solve from a config file");
  std::string config_path;
  nr->add_option("--config", config_path)->required();

  auto* su = app.add_subcommand("supercritical", "lacunary ladder norm table");
  int J = 22, kappa = 0;
  std::string ptilde_text = "2", su_out;
  int ud = 1, uN = 2048, uP = 32;
  su->add_option("--J", J);
  su->add_option("--ptilde", ptilde_text);
  su->add_option("--d", ud);
  su->add_option("--N", uN);
  su->add_option("--P", uP);
  su->add_option("--kappa", kappa);
  su->add_option("--out", su_out);

  auto* re = app.add_subcommand("regime", "classify a parameter point (or emit a region table)");
  std::string rp = "2", rq = "2", rw = "0", rfam = "frak_neg", table;
  int res = 16;
  re->add_option("--d", d);
  re->add_option("--p", rp);
  re->add_option("--q", rq);
  re->add_option("--w", rw);
  re->add_option("--family", rfam);
  re->add_option("--table", table);
  re->add_option("--res", res);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (wc->parsed()) return run_window_check(d, N, P, seed);
    if (de->parsed()) return run_decompose(in_path, j_single, p_text, out_path);
    if (no->parsed()) return run_norm(in_path, spec_text);
    if (ha->parsed()) return run_harness(d, N, P, seed, count, harness_out);
    if (sc->parsed())
      return run_schrodinger_check(pair_text, T, j_text, sd, sN, sP, seed,
                                   count > 0 ? count : 8, nt, sc_out);
    if (nr->parsed()) return run_nls(config_path);
    if (su->parsed()) return run_supercritical(J, ptilde_text, ud, uN, uP, kappa, su_out);
    if (re->parsed()) return run_regime(d, rp, rq, rw, rfam, table, res);
  } catch (const validation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const numeric_error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
