#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctlab/atlas.hpp"
#include "ctlab/error.hpp"
#include "ctlab/run.hpp"

namespace py = pybind11;
using namespace ctlab;

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Bindings for the ctlab core library.";
  mod.attr("__version__") = CTLAB_VERSION;

  // Translators run newest first, so the general base goes in first.
  py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);

  mod.def(
      "exponent",
      [](double alpha, double gamma, double m) {
        const ExponentResult r = exponent(ExponentQuery{alpha, gamma, m});
        return py::make_tuple(r.s, to_string(r.theorem), r.regime);
      },
      py::arg("alpha"), py::arg("gamma"), py::arg("m") = 2.0,
      "Sharp exponent s with the theorem and gamma regime, as (s, theorem, regime).");

  mod.def(
      "exponent_exact",
      [](const std::string& alpha, const std::string& gamma, const std::string& m) {
        const ExactResult r =
            exponent(ExactQuery{Rational::parse(alpha), Rational::parse(gamma), Rational::parse(m)});
        return py::make_tuple(r.s.str(), to_string(r.theorem), r.regime);
      },
      py::arg("alpha"), py::arg("gamma"), py::arg("m") = "2",
      "Rational version of exponent; arguments and s are strings such as '1/3'.");

  mod.def(
      "breakpoints",
      [](double alpha, double m) {
        std::vector<double> out;
        for (const auto& b : breakpoints(alpha, m)) out.push_back(b.gamma);
        return out;
      },
      py::arg("alpha"), py::arg("m") = 2.0);

  mod.def(
      "run_json",
      [](const std::string& config) {
        const RunConfig cfg = RunConfig::from_json(parse_config_text(config));
        RunRecord rec;
        {
          py::gil_scoped_release release;
          rec = run(cfg);
        }
        return rec.to_json().dump();
      },
      py::arg("config"), "Runs one experiment from a JSON document and returns the record as JSON text.");
}
