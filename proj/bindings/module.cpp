#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hegy/bootstrap_block.hpp"
#include "hegy/bootstrap_iid.hpp"
#include "hegy/errors.hpp"
#include "hegy/hegy_test.hpp"
#include "hegy/series.hpp"
#include "hegy/simulation.hpp"

namespace py = pybind11;
using namespace hegy;

namespace {

PValueRule pvalue_rule_from(const std::string& name) {
  if (name == "smoothed") return PValueRule::Smoothed;
  if (name == "paper_count" || name == "paper-count") return PValueRule::PaperCount;
  throw ConfigurationError("unknown p-value rule: " + name);
}

NoiseKind noise_from(const std::string& name) {
  if (name == "iid") return NoiseKind::Iid;
  if (name == "heter") return NoiseKind::Heter;
  if (name == "ma_pos") return NoiseKind::MaPos;
  if (name == "ma_neg") return NoiseKind::MaNeg;
  if (name == "ar") return NoiseKind::Ar;
  if (name == "period") return NoiseKind::Period;
  throw ConfigurationError("unknown noise type: " + name);
}

TargetRoot root_from(const std::string& name) {
  if (name == "plus1") return TargetRoot::Plus1;
  if (name == "minus1") return TargetRoot::Minus1;
  if (name == "complex") return TargetRoot::Complex;
  throw ConfigurationError("unknown root: " + name);
}

TaperSpec taper_from(const std::string& name, double ramp_fraction) {
  TaperSpec taper;
  if (name == "none") {
    taper.kind = TaperSpec::Kind::None;
  } else if (name == "trapezoid") {
    taper.kind = TaperSpec::Kind::Trapezoid;
    taper.ramp_fraction = ramp_fraction;
  } else {
    throw ConfigurationError("unknown taper: " + name);
  }
  return taper;
}

py::dict report_to_dict(const TestReport& report) {
  py::dict d;
  d["method"] = report.method;
  d["hypothesis"] = report.hypothesis.name();
  d["statistic"] = report.statistic;
  d["tail"] = report.tail == Tail::Left ? "left" : "right";
  d["observed_statistic"] = report.observed_statistic;
  d["bootstrap_statistics"] = report.bootstrap_statistics;
  d["p_value"] = report.p_value;
  d["reject"] = report.reject;
  d["level"] = report.level;
  d["seed"] = report.seed;
  d["config"] = report.config;
  py::dict diag;
  diag["residual_counts"] = report.diagnostics.residual_counts;
  diag["truncation_events"] = report.diagnostics.truncation_events;
  diag["warnings"] = report.diagnostics.warnings;
  d["diagnostics"] = diag;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bootstrap HEGY seasonal unit-root tests for quarterly series";

  py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);

  py::class_<QuarterlySeries>(m, "QuarterlySeries")
      .def(py::init<std::vector<double>, int>(), py::arg("values"), py::arg("start_season") = 1)
      .def_property_readonly("values", &QuarterlySeries::values)
      .def_property_readonly("start_season", &QuarterlySeries::start_season)
      .def("__len__", [](const QuarterlySeries& s) { return s.length(); })
      .def("season_of", &QuarterlySeries::season_of, py::arg("t"));

  m.def("seasonal_difference", &seasonal_difference, py::arg("y"),
        "(1 - L^4) y, aligned at original index 5");

  m.def(
      "hegy_transform",
      [](const QuarterlySeries& y) {
        const auto r = hegy_transform(y);
        py::dict d;
        d["y1"] = r.y1;
        d["y2"] = r.y2;
        d["y3"] = r.y3;
        d["y4"] = r.y4;
        d["first_index"] = r.first_index;
        return d;
      },
      py::arg("y"), "The four filtered regressor series, window starting at index 4");

  m.def(
      "multiply_polynomials",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return multiply_polynomials(LagPolynomial{a}, LagPolynomial{b}).coefficients;
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "ar_recursion",
      [](const std::vector<double>& filter, const std::vector<double>& driver,
         const std::vector<double>& initial) {
        return ar_recursion(LagPolynomial{filter}, driver, initial);
      },
      py::arg("filter"), py::arg("driver"), py::arg("initial"));

  py::class_<HegyStatistics>(m, "HegyStatistics")
      .def_readonly("pi_hat", &HegyStatistics::pi_hat)
      .def_readonly("t", &HegyStatistics::t)
      .def_readonly("k_used", &HegyStatistics::k_used)
      .def_readonly("retained_lags", &HegyStatistics::retained_lags)
      .def_property_readonly("F",
                             [](const HegyStatistics& s) {
                               py::dict d;
                               d["12"] = s.f12;
                               d["34"] = s.f34;
                               d["134"] = s.f134;
                               d["234"] = s.f234;
                               d["1234"] = s.f1234;
                               return d;
                             });

  m.def("augmented_hegy", &augmented_hegy, py::arg("y"), py::arg("k") = 4,
        py::arg("prune") = true);
  m.def("unaugmented_hegy", &unaugmented_hegy, py::arg("y"));

  m.def(
      "iid_bootstrap_test",
      [](const QuarterlySeries& y, const std::string& hypothesis, int B, int k_max, double level,
         std::uint64_t seed, bool reduced, const std::string& pvalue_rule, int threads) {
        IidBootConfig cfg;
        cfg.B = B;
        cfg.k_max = k_max;
        cfg.level = level;
        cfg.seed = seed;
        cfg.use_reduced_recursion_for_single_roots = reduced;
        cfg.pvalue_rule = pvalue_rule_from(pvalue_rule);
        cfg.threads = threads;
        return report_to_dict(iid_bootstrap_test(y, Hypothesis::from_string(hypothesis), cfg));
      },
      py::arg("y"), py::arg("hypothesis"), py::arg("B") = 500, py::arg("k_max") = 4,
      py::arg("level") = 0.05, py::arg("seed") = 0, py::arg("reduced_recursion") = true,
      py::arg("pvalue_rule") = "smoothed", py::arg("threads") = 1,
      "Seasonal iid bootstrap augmented HEGY test");

  m.def(
      "block_bootstrap_test",
      [](const QuarterlySeries& y, const std::string& hypothesis, int B, int b, double level,
         std::uint64_t seed, const std::string& statistic, const std::string& taper,
         double ramp_fraction, const std::string& pvalue_rule, int threads) {
        BlockBootConfig cfg;
        cfg.B = B;
        cfg.b = b;
        cfg.level = level;
        cfg.seed = seed;
        if (statistic == "t") cfg.statistic_choice = StatisticKind::T;
        else if (statistic == "pi") cfg.statistic_choice = StatisticKind::Pi;
        else throw ConfigurationError("unknown statistic: " + statistic);
        cfg.taper = taper_from(taper, ramp_fraction);
        cfg.pvalue_rule = pvalue_rule_from(pvalue_rule);
        cfg.threads = threads;
        return report_to_dict(block_bootstrap_test(y, Hypothesis::from_string(hypothesis), cfg));
      },
      py::arg("y"), py::arg("hypothesis"), py::arg("B") = 500, py::arg("b") = 4,
      py::arg("level") = 0.05, py::arg("seed") = 0, py::arg("statistic") = "t",
      py::arg("taper") = "trapezoid", py::arg("ramp_fraction") = 0.1,
      py::arg("pvalue_rule") = "smoothed", py::arg("threads") = 1,
      "Seasonal block bootstrap unaugmented HEGY test");

  m.def(
      "generate_series",
      [](const std::string& root, bool nuisance, double rho, const std::string& noise, int cycles,
         std::uint64_t seed) {
        DgpSpec spec;
        spec.target_root = root_from(root);
        spec.nuisance = nuisance;
        spec.rho = rho;
        spec.noise.kind = noise_from(noise);
        spec.cycles = cycles;
        spec.seed = seed;
        return generate_series(spec);
      },
      py::arg("root") = "plus1", py::arg("nuisance") = false, py::arg("rho") = 0.0,
      py::arg("noise") = "iid", py::arg("cycles") = 120, py::arg("seed") = 0,
      "Simulation-study data generating process");

  m.def(
      "empirical_rejection",
      [](const std::string& root, bool nuisance, double rho, const std::string& noise, int cycles,
         const std::string& method, const std::string& hypothesis, int N, int B, double level,
         std::uint64_t seed, int k_max, int b, const std::string& statistic, int threads) {
        DgpSpec dgp;
        dgp.target_root = root_from(root);
        dgp.nuisance = nuisance;
        dgp.rho = rho;
        dgp.noise.kind = noise_from(noise);
        dgp.cycles = cycles;
        TestSpec test;
        if (method == "iid-aug") test.method = Method::IidAug;
        else if (method == "block-unaug") test.method = Method::BlockUnaug;
        else throw ConfigurationError("unknown method: " + method);
        test.hypothesis = Hypothesis::from_string(hypothesis);
        test.iid.B = B;
        test.iid.k_max = k_max;
        test.block.B = B;
        test.block.b = b;
        test.block.statistic_choice = statistic == "pi" ? StatisticKind::Pi : StatisticKind::T;
        const auto r = empirical_rejection(dgp, test, N, level, seed, threads);
        py::dict d;
        d["rate"] = r.rejection_rate;
        d["se"] = r.standard_error;
        d["N"] = r.replications;
        d["wall_seconds"] = r.wall_seconds;
        return d;
      },
      py::arg("root"), py::arg("nuisance"), py::arg("rho"), py::arg("noise"), py::arg("cycles"),
      py::arg("method"), py::arg("hypothesis"), py::arg("N"), py::arg("B"),
      py::arg("level") = 0.05, py::arg("seed") = 0, py::arg("k_max") = 4, py::arg("b") = 4,
      py::arg("statistic") = "t", py::arg("threads") = 0,
      "Monte Carlo rejection rate of a bootstrap test against a DGP");

  m.def("tilde_gamma", &tilde_gamma, py::arg("v"), py::arg("h"),
        "Season-averaged sample autocovariance at lag h");

#ifdef HEGY_VERSION
  m.attr("__version__") = HEGY_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
