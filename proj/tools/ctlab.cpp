// Command-line front end. Flags are folded into the JSON config document
// (flags win), then the whole run goes through ctlab::run.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ctlab/error.hpp"
#include "ctlab/run.hpp"

namespace {

using nlohmann::json;

struct Flags {
  CLI::App* app;
  json& patch;

  template <typename T>
  void opt(const std::string& names, const std::string& key, const std::string& help) {
    app->add_option_function<T>(names, [this, key](const T& v) { patch[key] = v; }, help);
  }
  void flag(const std::string& names, const std::string& key, const std::string& help) {
    app->add_flag_function(names, [this, key](std::int64_t) { patch[key] = true; }, help);
  }
};

void add_common(Flags f) {
  f.opt<std::string>("--out", "out", "Write the result here instead of stdout");
  f.opt<std::string>("--format", "format", "csv or json");
  f.opt<double>("--tolerance", "tolerance", "Slope tolerance for verdicts");
  f.opt<std::uint64_t>("--seed", "seed", "Seed for randomized checks");
}

void add_family(Flags f) {
  f.opt<std::string>("--family", "family", "thm31 or thm32");
  f.opt<std::string>("--alpha", "alpha", "Curve exponent, e.g. 1/4");
  f.opt<std::string>("--gamma", "gamma", "Damping exponent");
  f.opt<double>("-b,--b", "b", "Modulation exponent (thm32)");
  f.opt<double>("-c,--c", "c", "Time-window constant");
}

void add_grids(Flags f) {
  f.opt<int>("--t-min-exponent", "t_min_exponent", "Smallest time node is 2^this");
  f.opt<int>("--steps-per-octave", "steps_per_octave", "Time nodes per doubling");
  f.opt<std::size_t>("--n-x", "n_x", "Uniform x nodes on [-1, 1]");
  f.opt<std::size_t>("--n-samples", "n_samples", "Spectral samples of f_R");
  f.opt<double>("--oversampling", "oversampling", "FFT oversampling factor");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ctlab::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ctlab: convergence exponents along curves for damped dispersive equations"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config document")->check(CLI::ExistingFile);

  json patch = json::object();
  auto* atlas = app.add_subcommand("atlas", "Sharp exponent s(alpha, gamma, m) with theorem and regime");
  auto* sweep = app.add_subcommand("sweep", "Fit the growth of Q(R) for a counterexample family");
  auto* lower = app.add_subcommand("lowerbound", "Check the pointwise lower bound on the witness set");
  auto* kernel = app.add_subcommand("kernelcheck", "Kernel bound and Schur integral sweeps");
  auto* eval = app.add_subcommand("eval", "Dump the evolved field along the curve");

  for (auto* sc : {atlas, sweep, lower, kernel, eval}) {
    sc->add_option("--config", config_path, "JSON config document")->check(CLI::ExistingFile);
    add_common({sc, patch});
  }

  Flags fa{atlas, patch};
  fa.opt<std::string>("--alpha", "alpha", "Curve exponent, e.g. 1/3");
  fa.opt<std::string>("--gamma", "gamma", "Damping exponent");
  fa.opt<std::vector<std::string>>("--gammas", "gammas", "Grid of gamma values");
  fa.opt<std::string>("-m,--m", "m", "Dispersion order");
  fa.flag("--continuity", "continuity", "Also check continuity across breakpoints");

  add_family({sweep, patch});
  add_grids({sweep, patch});
  Flags{sweep, patch}.opt<std::vector<double>>("--scales", "scales", "Increasing R values");
  Flags{sweep, patch}.opt<double>("-s,--s", "s", "Sobolev order");

  add_family({lower, patch});
  Flags fl{lower, patch};
  fl.opt<double>("-R,--R", "R", "Frequency scale");
  fl.opt<std::size_t>("--nodes", "nodes", "Witness nodes in the set");
  fl.opt<std::string>("--witness", "witness", "selector or zero_time");
  fl.flag("--calibrate", "calibrate", "Halve c until the bound holds");

  Flags fk{kernel, patch};
  fk.opt<std::string>("--alpha", "alpha", "Curve exponent");
  fk.opt<std::string>("--gamma", "gamma", "Damping exponent");
  fk.opt<std::vector<double>>("--scales", "scales", "Increasing lambda values");
  fk.opt<std::size_t>("--count", "count", "Random samples per lambda");
  fk.opt<std::vector<double>>("--x-points", "x_points", "x values for the Schur integral");

  add_family({eval, patch});
  Flags fe{eval, patch};
  fe.opt<std::string>("-m,--m", "m", "Dispersion order");
  fe.opt<double>("-R,--R", "R", "Frequency scale of the source");
  fe.opt<std::string>("--curve", "curve", "identity, shear or holder_tangent");
  fe.opt<std::vector<double>>("-x,--x", "x", "Evaluation points");
  fe.opt<std::vector<double>>("-t,--t", "t", "Evaluation times");
  fe.opt<std::string>("--method", "method", "auto, transform or quadrature");
  fe.opt<double>("--oversampling", "oversampling", "FFT oversampling factor");
  fe.opt<std::size_t>("--n-samples", "n_samples", "Spectral samples of the source");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ctlab::kExitOk : ctlab::kExitConfig;
  }

  ctlab::RunRecord rec;
  try {
    json doc = config_path.empty() ? json::object() : ctlab::parse_config_text(read_file(config_path));
    if (!doc.is_object()) throw ctlab::ConfigError("config must be a JSON object");
    doc.merge_patch(patch);
    doc["command"] = app.get_subcommands().front()->get_name();
    const ctlab::RunConfig cfg = ctlab::RunConfig::from_json(doc);
    cfg.validate();
    rec = ctlab::run(cfg);
  } catch (const ctlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ctlab::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return ctlab::kExitInternal;
  }

  const std::string body = rec.config.format == "json" ? rec.to_json().dump(2) + "\n" : rec.to_csv();
  if (rec.config.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(rec.config.out, std::ios::binary);
    out << body;
    if (!out) {
      std::cerr << "internal error: cannot write '" << rec.config.out << "'\n";
      return ctlab::kExitInternal;
    }
  }
  for (const auto& e : rec.errors) std::cerr << "error: " << e << '\n';
  for (const auto& v : rec.verdicts) {
    std::fprintf(stderr, "%s: %s (measured %.6g, predicted %.6g)\n", v.name.c_str(), v.pass ? "pass" : "FAIL",
                 v.measured, v.predicted);
  }
  return rec.exit_code();
}
