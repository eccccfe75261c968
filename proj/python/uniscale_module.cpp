// Python bindings for the core operations: grids and fields, transforms,
// box projections and the norm families, regime classification, the free
// propagator, and the fixed-point solver.  Fields cross the boundary as
// plain lists of complex numbers; exponents and weights as strings ("2",
// "4/3", "inf") so rational bookkeeping stays exact.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "uniscale/common.hpp"
#include "uniscale/decomp.hpp"
#include "uniscale/grid.hpp"
#include "uniscale/nls.hpp"
#include "uniscale/norms.hpp"
#include "uniscale/rational.hpp"
#include "uniscale/schrodinger.hpp"
#include "uniscale/window.hpp"

namespace py = pybind11;
using namespace uniscale;

namespace {

NormFamily family_of(const std::string& name) {
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

Field as_physical(const Field& f) { return f.domain == Domain::physical ? f : idft(f); }
Field as_spectral(const Field& f) { return f.domain == Domain::spectral ? f : dft(f); }

std::array<int, 3> k_of(const std::vector<int>& k, int d) {
  if (static_cast<int>(k.size()) != d)
    throw validation_error("box index needs one entry per axis");
  std::array<int, 3> kk{0, 0, 0};
  for (std::size_t i = 0; i < k.size(); ++i) kk[i] = k[i];
  return kk;
}

// same default splitting the command-line tool uses for the script upper bound
std::vector<int> default_scales(const GridSpec& g, NormFamily fam) {
  const ScaleRange r = scale_range(g);
  std::vector<int> scales;
  if (fam == NormFamily::script_pos) {
    for (int j = std::min(r.j_max, 2); j >= 0; --j) scales.push_back(j);
  } else {
    for (int j = 0; j >= std::max(r.j_min, -6); --j) scales.push_back(j);
  }
  return scales;
}

}  // namespace

PYBIND11_MODULE(_uniscale, m) {
  m.doc() = "frequency-uniform decomposition norms and dispersive tooling on the torus";

  py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<GridSpec>(m, "Grid")
      .def(py::init<int, int, int>(), py::arg("d"), py::arg("N"), py::arg("P"))
      .def_readonly("d", &GridSpec::d)
      .def_readonly("N", &GridSpec::N)
      .def_readonly("P", &GridSpec::P)
      .def("size", &GridSpec::size)
      .def("dx", &GridSpec::dx)
      .def("edge", &GridSpec::edge)
      .def("nyquist", &GridSpec::nyquist)
      .def("scale_range",
           [](const GridSpec& g) {
             const ScaleRange r = scale_range(g);
             return std::make_pair(r.j_min, r.j_max);
           })
      .def("__repr__", [](const GridSpec& g) {
        return "Grid(d=" + std::to_string(g.d) + ", N=" + std::to_string(g.N) +
               ", P=" + std::to_string(g.P) + ")";
      });

  py::class_<Field>(m, "Field")
      .def_property_readonly("grid", [](const Field& f) { return f.grid; })
      .def_property_readonly(
          "domain",
          [](const Field& f) { return f.domain == Domain::physical ? "physical" : "spectral"; })
      .def_property_readonly("values", [](const Field& f) { return f.v; })
      .def("__len__", &Field::size);

  m.def(
      "field",
      [](const GridSpec& g, const std::string& domain, const std::vector<cplx>& values) {
        if (domain != "physical" && domain != "spectral")
          throw validation_error("domain must be 'physical' or 'spectral'");
        Field f(g, domain == "physical" ? Domain::physical : Domain::spectral);
        if (values.size() != f.v.size())
          throw validation_error("value count does not match the grid");
        f.v = values;
        return f;
      },
      py::arg("grid"), py::arg("domain"), py::arg("values"),
      "Build a field from per-sample (or per-mode) complex values.");

  m.def("to_spectral", &as_spectral, py::arg("f"));
  m.def("to_physical", &as_physical, py::arg("f"));

  m.def(
      "lp_norm",
      [](const Field& f, const std::string& p) { return lp_norm(as_physical(f), parse_exponent(p)); },
      py::arg("f"), py::arg("p"), "Physical-domain Lp norm (transforms first if needed).");

  m.def(
      "window_profile", [](double t) { return build_window().h(t); }, py::arg("t"),
      "The 1-d window profile: 1 on [-1/4, 1/4], supported in (-3/4, 3/4).");

  m.def(
      "box_project",
      [](const Field& f, int j, const std::vector<int>& k) {
        return box_op(build_window(), f, j, k_of(k, f.grid.d));
      },
      py::arg("f"), py::arg("j"), py::arg("k"),
      "Smooth frequency-box projection at scale j, box k; keeps the input domain.");

  m.def(
      "mj_norm",
      [](const Field& f, int j, const std::string& p, const std::string& q, bool checked) {
        return mj_norm(build_window(), f, j, parse_exponent(p), parse_exponent(q), checked);
      },
      py::arg("f"), py::arg("j"), py::arg("p"), py::arg("q"), py::arg("checked") = true);

  m.def(
      "mj_norm_oracle",
      [](const Field& f, int j, const std::string& p, const std::string& q) {
        return mj_norm_oracle(build_window(), f, j, parse_exponent(p), parse_exponent(q));
      },
      py::arg("f"), py::arg("j"), py::arg("p"), py::arg("q"),
      "Same value through the unit-scale dilation route.");

  m.def(
      "modulation_norm",
      [](const Field& f, const std::string& p, const std::string& q, double s) {
        return modulation_norm(build_window(), f, parse_exponent(p), parse_exponent(q), s);
      },
      py::arg("f"), py::arg("p"), py::arg("q"), py::arg("s") = 0.0);

  m.def(
      "norm_with_spec",
      [](const Field& f, const std::string& family, const std::string& w, const std::string& p,
         const std::string& q, const std::string& r, int j) {
        NormSpec spec;
        spec.family = family_of(family);
        spec.w = parse_rat(w);
        spec.p = parse_exponent(p);
        spec.q = parse_exponent(q);
        spec.r = parse_exponent(r);
        spec.j = j;
        spec.validate(f.grid.d);
        const WindowFamily fam = build_window();
        switch (spec.family) {
          case NormFamily::feichtinger_s:
            return modulation_norm(fam, f, spec.p, spec.q, spec.w.value());
          case NormFamily::single_scale_j:
            return mj_norm(fam, f, spec.j, spec.p, spec.q);
          case NormFamily::frak_neg:
          case NormFamily::frak_pos:
          case NormFamily::frak_dot:
            return frak_norm(fam, f, spec);
          default: {
            const Decomposition dec = lowpass_decomposition(
                build_lowpass(fam), as_spectral(f), default_scales(f.grid, spec.family));
            return script_norm_upper(fam, dec, spec);
          }
        }
      },
      py::arg("f"), py::arg("family"), py::arg("w"), py::arg("p"), py::arg("q"),
      py::arg("r") = "inf", py::arg("j") = 0,
      "Norm selected by family name; decomposition families report the "
      "low-pass-splitting upper bound.");

  m.def(
      "classify",
      [](int d, const std::string& p, const std::string& q, const std::string& w,
         const std::string& family) -> std::string {
        const NormFamily fam = family_of(family);
        const Exponent pe = parse_exponent(p), qe = parse_exponent(q);
        const Rat wr = parse_rat(w);
        switch (fam) {
          case NormFamily::frak_neg:
          case NormFamily::frak_pos:
          case NormFamily::frak_dot:
            return regime_name(regime_classify(d, pe, qe, wr, fam));
          case NormFamily::script_neg:
          case NormFamily::script_pos:
          case NormFamily::script_dot:
            return regime_name(mu_regime_classify(d, pe, qe, wr, fam));
          default:
            throw validation_error("classification needs a profile or decomposition family");
        }
      },
      py::arg("d"), py::arg("p"), py::arg("q"), py::arg("w"), py::arg("family"),
      "Regime of the (p, q, w) parameter point for the given family.");

  m.def("propagate", &propagate, py::arg("u0"), py::arg("t"),
        "Free propagator at time t; keeps the input domain.");
  m.def("wrap_time", &t_wrap, py::arg("grid"), py::arg("sigma"),
        "Time at which a spreading Gaussian of initial width sigma reaches "
        "a quarter of the torus edge.");

  m.def(
      "solve_nls",
      [](const Field& u0, int kappa, double lambda, double T, std::size_t windows,
         std::size_t steps) {
        NLSProblem prob;
        prob.grid = u0.grid;
        prob.u0 = u0;
        prob.T = T;
        prob.nonlinearity = PowerNonlinearity{kappa, lambda};
        SolverConfig cfg;
        cfg.windows = windows;
        cfg.steps = steps;
        const PicardResult r = picard_solve(prob, cfg);
        py::dict out;
        out["converged"] = r.converged;
        out["blowup"] = r.blowup;
        out["t"] = r.history.t;
        out["l2"] = r.history.l2;
        out["m0_21"] = r.history.m0_21;
        out["iterations"] = r.iterations;
        out["final"] = r.traj.u.back();
        return out;
      },
      py::arg("u0"), py::arg("kappa"), py::arg("lambda_"), py::arg("T"),
      py::arg("windows") = 1, py::arg("steps") = 16,
      "Windowed fixed-point solve of i u_t + Laplace(u) = lambda |u|^{2 kappa} u.");

  m.def(
      "split_step",
      [](const Field& u0, int kappa, double lambda, double T, double dt) {
        NLSProblem prob;
        prob.grid = u0.grid;
        prob.u0 = u0;
        prob.T = T;
        prob.nonlinearity = PowerNonlinearity{kappa, lambda};
        return splitstep_reference(prob, dt).u.back();
      },
      py::arg("u0"), py::arg("kappa"), py::arg("lambda_"), py::arg("T"), py::arg("dt"),
      "Strang-splitting reference integrator; returns the final state.");
}
