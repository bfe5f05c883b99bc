#include <pybind11/pybind11.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "curvgauge/checks.hpp"
#include "curvgauge/cli.hpp"
#include "curvgauge/errors.hpp"

namespace py = pybind11;
using namespace curvgauge;

namespace {

std::vector<std::vector<double>> matrix_rows(const Eigen::Matrix4d& m) {
  std::vector<std::vector<double>> rows(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows[i][j] = m(i, j);
  return rows;
}

py::dict search_report_dict(const SearchReport& r) {
  py::dict d;
  d["max_margin"] = r.argmax ? py::cast(r.maxMargin) : py::none();
  d["argmax_index"] = r.argmaxIndex;
  d["argmax_from_ascent"] = r.argmaxFromAscent;
  py::dict hist;
  for (int c = 0; c < 4; ++c) hist[py::str(std::string(to_string(static_cast<CaseLabel>(c))))] = r.caseHistogram[c];
  d["case_histogram"] = hist;
  d["rejected"] = r.rejected;
  d["samples"] = r.samples;
  d["seed"] = r.seed;
  d["restarts_run"] = r.restartsRun;
  d["max_weyl_norm_sq"] = r.maxWeylNormSq;
  d["epsilon_threshold"] = r.epsilonRegime.threshold;
  d["epsilon_samples"] = r.epsilonRegime.samples;
  d["epsilon_max_bare_margin"] = r.epsilonRegime.samples ? py::cast(r.epsilonRegime.maxBareMargin) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curvature tensors, the pointwise bound and its falsification search";

  py::register_exception<Error>(m, "CurvgaugeError");

  py::class_<CurvatureTensor>(m, "CurvatureTensor")
      .def(py::init<int>())
      .def_property_readonly("dim", &CurvatureTensor::dim)
      .def("__call__", [](const CurvatureTensor& r, int i, int j, int k, int l) { return r(i, j, k, l); })
      .def("components",
           [](const CurvatureTensor& r) { return std::vector<double>(r.components().begin(), r.components().end()); })
      .def("coordinate_sectional", &CurvatureTensor::coordinate_sectional)
      .def("bianchi_residual", &CurvatureTensor::bianchi_residual)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * double())
      .def(double() * py::self);

  m.def("make_curvature_tensor",
        [](int dim, const std::vector<double>& comp) { return make_curvature_tensor(dim, comp); });
  m.def("constant_curvature", &constant_curvature, py::arg("dim"), py::arg("c"));
  m.def("sectional", [](const CurvatureTensor& r, const std::vector<double>& u, const std::vector<double>& v) {
    return sectional(r, u, v);
  });
  m.def("sectional_range", [](const CurvatureTensor& r, int budget, std::uint64_t seed) {
    const SectionalRange s = sectional_range(r, budget, seed);
    return py::make_tuple(s.minEstimate, s.maxEstimate);
  });
  m.def("invariants", [](const CurvatureTensor& r) {
    const CurvatureInvariants inv = invariants(r);
    py::dict d;
    d["scalar"] = inv.scalar;
    d["ric_norm_sq"] = inv.ricNormSq;
    d["weyl_norm_sq"] = inv.weylNormSq;
    d["einstein_norm_sq"] = inv.einsteinNormSq;
    std::vector<std::vector<double>> ric(r.dim(), std::vector<double>(r.dim()));
    for (int i = 0; i < r.dim(); ++i)
      for (int j = 0; j < r.dim(); ++j) ric[i][j] = inv.ric(i, j);
    d["ric"] = ric;
    return d;
  });

  py::class_<AmbientRestriction>(m, "AmbientRestriction")
      .def_readonly("comp", &AmbientRestriction::comp)
      .def_readonly("sigma", &AmbientRestriction::sigma)
      .def_property_readonly("a", [](const AmbientRestriction& a) { return matrix_rows(a.a); })
      .def_readonly("a_ring_norm_sq", &AmbientRestriction::aRingNormSq)
      .def("admissible", &AmbientRestriction::admissible, py::arg("tol") = 1e-12);
  m.def("make_ambient_restriction", &make_ambient_restriction);
  m.def("gauss_induced", [](const AmbientRestriction& amb, const std::vector<double>& lambda) {
    return gauss_induced(amb, ShapeOperator{lambda});
  });

  py::class_<ShapeSpectrum>(m, "ShapeSpectrum")
      .def_readonly("H", &ShapeSpectrum::H)
      .def_readonly("lam", &ShapeSpectrum::lambda)
      .def_readonly("mu", &ShapeSpectrum::mu)
      .def_readonly("frame_lambda", &ShapeSpectrum::frameLambda)
      .def_readonly("a_norm_sq", &ShapeSpectrum::aNormSq)
      .def_readonly("p3", &ShapeSpectrum::p3)
      .def_readonly("p4", &ShapeSpectrum::p4)
      .def_readonly("gk", &ShapeSpectrum::gk);
  m.def("shape_spectrum", [](const std::array<double, 4>& l) { return shape_spectrum(l); });
  m.def("spectrum_from_mu", &spectrum_from_mu);

  m.def("q_direct", &q_direct);
  m.def("q_decomposed", &q_decomposed);
  m.def("bare_bound", &bare_bound);
  m.def("claim_bound", [](double H) {
    const ClaimBound b = claim_bound(H);
    py::dict d;
    d["x0"] = b.x0;
    d["x_case"] = b.xCase;
    d["branch"] = b.branch;
    d["f_of_h"] = b.fOfH;
    d["bound"] = b.bound;
    return d;
  });
  m.def("f_profile", [](double a, double H) {
    const FProfile p = f_profile(a, H);
    return py::make_tuple(p.F, p.eta1, p.eta2, p.factored);
  });
  m.def("classify_case", [](const AmbientRestriction& amb, const ShapeSpectrum& s) {
    return std::string(to_string(classify_case(amb, s)));
  });
  m.def(
      "claim_margin",
      [](const AmbientRestriction& amb, const ShapeSpectrum& s, double lcfTol) {
        const MarginReport r = claim_margin(amb, s, lcfTol);
        py::dict d;
        d["q"] = r.q;
        d["bound"] = r.bound;
        d["margin"] = r.margin;
        d["case"] = std::string(to_string(r.label));
        d["weyl_norm_sq"] = r.weylNormSq;
        return d;
      },
      py::arg("ambient"), py::arg("spectrum"), py::arg("lcf_tol") = 1e-8);

  m.def("kappa", [](const std::string& preset, double t) {
    const KappaPair k = kappa(WarpedPreset::parse(preset), t);
    return py::make_tuple(k.kappa1, k.kappa2);
  });
  m.def("warped_ambient", [](double k1, double k2, const std::array<double, 4>& T) {
    return warped_ambient(KappaPair{k1, k2}, make_tangent_projection(T));
  });
  m.def("lcf_weyl", [](const std::vector<double>& mu, int n) { return lcf_weyl(mu, n); });
  m.def("lcf_classify", [](const std::array<double, 4>& mu, double tol) {
    const LcfPattern p = lcf_classify(mu, tol);
    return py::make_tuple(p.pattern, p.m, p.position);
  });
  m.def("pattern_mu", &pattern_mu);
  m.def(
      "rotsym_margin",
      [](double k1, double k2, const std::array<double, 4>& T, double mm, double H, int position) {
        const RotsymChain c = rotsym_margin(KappaPair{k1, k2}, make_tangent_projection(T), mm, H, position);
        py::dict d;
        d["q"] = c.q;
        d["q_corrected"] = c.qExact;
        d["displayed"] = c.displayed;
        d["chain1"] = c.dropped;
        d["chain2"] = c.cubic;
        d["kappa_bound"] = c.kappaBound;
        d["unit_bound"] = c.unitBound;
        d["mu4_residual"] = c.mu4Residual;
        return d;
      },
      py::arg("kappa1"), py::arg("kappa2"), py::arg("T"), py::arg("m"), py::arg("H"), py::arg("position") = 4);

  m.def(
      "integrate_slice",
      [](const std::string& preset, double t, std::uint64_t mcSamples, std::uint64_t seed) {
        const SliceGeometry s = slice_hypersurface(WarpedPreset::parse(preset), t);
        const IntegralReport r = integrate_slice(s, mcSamples, seed);
        py::dict d;
        d["H"] = s.H;
        d["intrinsic_sec"] = s.intrinsicSec;
        d["volume"] = s.volume;
        d["gbc_integral"] = r.gbcIntegral;
        d["euler_number"] = r.eulerNumber;
        d["volume_functional"] = r.volumeFunctional;
        d["slack"] = r.slack;
        if (r.monteCarlo) {
          d["mc_estimate"] = r.mc.estimate;
          d["mc_std_error"] = r.mc.stdError;
        }
        return d;
      },
      py::arg("preset"), py::arg("t"), py::arg("mc_samples") = 0, py::arg("seed") = 1);
  m.def("gbc_integrand", &gbc_integrand);

  m.def("epsilon0_threshold", [] {
    const Epsilon0 e = epsilon0_threshold();
    return py::make_tuple(e.root, e.closedForm, e.publishedValue);
  });
  m.def(
      "maximize_margin",
      [](const std::string& family, std::uint64_t samples, int restarts, std::uint64_t seed, double hMin, double hMax,
         bool strict, int workers) {
        SearchConfig cfg;
        cfg.family = parse_family(family);
        cfg.samples = samples;
        cfg.restarts = restarts;
        cfg.seed = seed;
        cfg.hMin = hMin;
        cfg.hMax = hMax;
        cfg.strict = strict;
        cfg.workers = workers;
        SearchReport r;
        {
          py::gil_scoped_release release;
          r = maximize_margin(cfg);
        }
        return search_report_dict(r);
      },
      py::arg("family") = "warped", py::arg("samples") = 10000, py::arg("restarts") = 10, py::arg("seed") = 42,
      py::arg("h_min") = -2.0, py::arg("h_max") = 2.0, py::arg("strict") = false, py::arg("workers") = 1);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, log;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, log);
    }
    return py::make_tuple(code, out.str(), log.str());
  });
  m.attr("__version__") = cli::kToolVersion;
}
