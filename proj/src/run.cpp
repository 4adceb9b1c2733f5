#include "ctlab/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ctlab/atlas.hpp"
#include "ctlab/counterexample.hpp"
#include "ctlab/error.hpp"
#include "ctlab/evolve.hpp"
#include "ctlab/kernel.hpp"
#include "ctlab/maximal.hpp"
#include "ctlab/rational.hpp"

namespace ctlab {

using nlohmann::json;

namespace {

const std::vector<std::string> kCommands{"atlas", "sweep", "lowerbound", "kernelcheck", "eval"};

[[noreturn]] void field_error(const std::string& field, const std::string& msg) {
  throw ConfigError("field '" + field + "': " + msg);
}

double number_from_text(const std::string& field, const std::string& text) {
  try {
    if (text.find('/') != std::string::npos) return Rational::parse(text).to_double();
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) field_error(field, "not a finite number: '" + text + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    field_error(field, "not a number: '" + text + "'");
  }
}

std::optional<Rational> exact_from_text(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string numeric_text(const std::string& field, const json& v) {
  if (v.is_number()) return v.dump();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    number_from_text(field, s);
    return s;
  }
  field_error(field, "expected a number or a string such as \"1/3\"");
}

template <typename T>
T get_as(const std::string& field, const json& v) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    field_error(field, "has the wrong type (" + std::string(v.type_name()) + ")");
  }
}

CounterexampleFamily family_of(const RunConfig& cfg, double R) {
  CounterexampleFamily fam;
  fam.kind = family_kind_from_string(cfg.family);
  fam.alpha = cfg.alpha_value();
  fam.gamma = cfg.gamma_value();
  fam.b = cfg.b;
  fam.c = cfg.c;
  fam.R = R;
  return fam;
}

CurveSpec curve_of(const RunConfig& cfg) {
  if (cfg.curve == "identity") return CurveSpec::identity();
  if (cfg.curve == "shear") return CurveSpec::shear();
  return CurveSpec::holder_tangent(cfg.alpha_value());
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

void check_scales(const std::string& field, const std::vector<double>& v, std::size_t min_count) {
  if (v.empty()) field_error(field, "empty scale list");
  if (v.size() < min_count) field_error(field, "needs at least " + std::to_string(min_count) + " scales");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 4.0) || !std::isfinite(v[i])) field_error(field, "every scale must be >= 4");
    if (i > 0 && !(v[i] > v[i - 1])) field_error(field, "scales must be strictly increasing");
  }
}

GridOverrides grids_of(const RunConfig& cfg, const CounterexampleFamily& fam) {
  GridOverrides g;
  if (cfg.t_min_exponent || cfg.steps_per_octave != 8) {
    g.time = TimeGridSpec{cfg.t_min_exponent.value_or(default_t_min_exponent(fam.lambda(), fam.alpha)),
                          cfg.steps_per_octave};
  }
  if (cfg.n_x) g.x_nodes = default_x_nodes(static_cast<double>(*cfg.n_x - 1) / 8.0, sets_AB(fam));
  g.n_samples = cfg.n_samples;
  g.plan.oversampling = cfg.oversampling;
  return g;
}

}  // namespace

double RunConfig::alpha_value() const { return number_from_text("alpha", alpha); }
double RunConfig::gamma_value() const { return number_from_text("gamma", gamma); }
double RunConfig::m_value() const { return number_from_text("m", m); }

json parse_config_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min(e.byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("config parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                      ": " + e.what());
  }
}

RunConfig RunConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  for (const auto& [key, v] : doc.items()) {
    if (key == "command") c.command = get_as<std::string>(key, v);
    else if (key == "family") c.family = get_as<std::string>(key, v);
    else if (key == "alpha") c.alpha = numeric_text(key, v);
    else if (key == "gamma") c.gamma = numeric_text(key, v);
    else if (key == "m") c.m = numeric_text(key, v);
    else if (key == "b") c.b = get_as<double>(key, v);
    else if (key == "c") c.c = get_as<double>(key, v);
    else if (key == "s") c.s = get_as<double>(key, v);
    else if (key == "curve") c.curve = get_as<std::string>(key, v);
    else if (key == "scales") c.scales = get_as<std::vector<double>>(key, v);
    else if (key == "gammas") {
      if (!v.is_array()) field_error(key, "expected an array");
      c.gammas.clear();
      for (const auto& g : v) c.gammas.push_back(numeric_text(key, g));
    } else if (key == "R") c.R = get_as<double>(key, v);
    else if (key == "t_min_exponent") {
      if (v.is_null()) c.t_min_exponent.reset();
      else c.t_min_exponent = get_as<int>(key, v);
    } else if (key == "steps_per_octave") c.steps_per_octave = get_as<int>(key, v);
    else if (key == "n_x") {
      if (v.is_null()) c.n_x.reset();
      else c.n_x = get_as<std::size_t>(key, v);
    } else if (key == "n_samples") {
      if (v.is_null()) c.n_samples.reset();
      else c.n_samples = get_as<std::size_t>(key, v);
    } else if (key == "oversampling") c.oversampling = get_as<double>(key, v);
    else if (key == "continuity") c.continuity = get_as<bool>(key, v);
    else if (key == "calibrate") c.calibrate = get_as<bool>(key, v);
    else if (key == "witness") c.witness = get_as<std::string>(key, v);
    else if (key == "nodes") c.nodes = get_as<std::size_t>(key, v);
    else if (key == "count") c.count = get_as<std::size_t>(key, v);
    else if (key == "seed") c.seed = get_as<std::uint64_t>(key, v);
    else if (key == "x_points") c.x_points = get_as<std::vector<double>>(key, v);
    else if (key == "x") c.x = get_as<std::vector<double>>(key, v);
    else if (key == "t") c.t = get_as<std::vector<double>>(key, v);
    else if (key == "method") c.method = get_as<std::string>(key, v);
    else if (key == "tolerance") c.tolerance = get_as<double>(key, v);
    else if (key == "format") c.format = get_as<std::string>(key, v);
    else if (key == "out") c.out = get_as<std::string>(key, v);
    else field_error(key, "unknown field");
  }
  return c;
}

json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["family"] = family;
  j["alpha"] = alpha;
  j["gamma"] = gamma;
  j["m"] = m;
  j["b"] = b;
  j["c"] = c;
  j["s"] = s;
  j["curve"] = curve;
  j["scales"] = scales;
  j["gammas"] = gammas;
  j["R"] = R;
  j["t_min_exponent"] = t_min_exponent ? json(*t_min_exponent) : json(nullptr);
  j["steps_per_octave"] = steps_per_octave;
  j["n_x"] = n_x ? json(*n_x) : json(nullptr);
  j["n_samples"] = n_samples ? json(*n_samples) : json(nullptr);
  j["oversampling"] = oversampling;
  j["continuity"] = continuity;
  j["calibrate"] = calibrate;
  j["witness"] = witness;
  j["nodes"] = nodes;
  j["count"] = count;
  j["seed"] = seed;
  j["x_points"] = x_points;
  j["x"] = x;
  j["t"] = t;
  j["method"] = method;
  j["tolerance"] = tolerance;
  j["format"] = format;
  j["out"] = out;
  return j;
}

void RunConfig::validate() const {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    field_error("command", "unknown command '" + command + "'");
  }
  const double a = alpha_value();
  if (!(a > 0.0 && a <= 1.0)) field_error("alpha", "must lie in (0, 1], got " + alpha);
  if (!(gamma_value() > 0.0)) field_error("gamma", "must be positive, got " + gamma);
  if (!(m_value() > 0.0)) field_error("m", "must be positive, got " + m);
  for (const auto& g : gammas) {
    if (!(number_from_text("gammas", g) > 0.0)) field_error("gammas", "must be positive, got " + g);
  }
  if (family != "thm31" && family != "thm32") field_error("family", "expected thm31 or thm32");
  if (curve != "identity" && curve != "shear" && curve != "holder_tangent") {
    field_error("curve", "expected identity, shear or holder_tangent");
  }
  if (format != "csv" && format != "json") field_error("format", "expected csv or json");
  if (method != "auto" && method != "transform" && method != "quadrature") {
    field_error("method", "expected auto, transform or quadrature");
  }
  if (witness != "selector" && witness != "zero_time") field_error("witness", "expected selector or zero_time");
  if (!(c > 0.0 && c < 1.0)) field_error("c", "must lie in (0, 1)");
  if (!(b >= 1.0)) field_error("b", "must be >= 1");
  if (!(s >= 0.0)) field_error("s", "must be >= 0");
  if (!(tolerance > 0.0)) field_error("tolerance", "must be positive");
  if (!(oversampling >= 2.0)) field_error("oversampling", "must be >= 2");
  if (steps_per_octave < 1) field_error("steps_per_octave", "must be positive");
  if (t_min_exponent && *t_min_exponent > -2) field_error("t_min_exponent", "must be <= -2");
  if (n_x && *n_x < 9) field_error("n_x", "must be >= 9");
  if (n_samples && *n_samples < kMinCounterexampleSamples) {
    field_error("n_samples", "must be >= " + std::to_string(kMinCounterexampleSamples));
  }
  if (!(R >= 4.0)) field_error("R", "must be >= 4");

  auto regime = [&](const std::string& field, auto&& check) {
    try {
      check();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      field_error(field, e.what());
    }
  };
  if (command == "sweep") {
    check_scales("scales", scales, 4);
    regime("b", [&] { sets_AB(family_of(*this, scales.front())); });
  } else if (command == "lowerbound") {
    if (nodes < 256) field_error("nodes", "the witness needs >= 256 nodes");
    regime("b", [&] { sets_AB(family_of(*this, R)); });
  } else if (command == "kernelcheck") {
    check_scales("scales", scales, 1);
    if (count < 100) field_error("count", "needs >= 100 samples per lambda");
    if (x_points.empty()) field_error("x_points", "needs at least one point");
    regime("gamma", [&] { beta_table(a, gamma_value()); });
  } else if (command == "eval") {
    if (x.empty() || t.empty()) field_error(x.empty() ? "x" : "t", "needs at least one value");
    for (double tv : t) {
      if (!(tv >= 0.0 && tv <= 1.0)) field_error("t", "times must lie in [0, 1]");
    }
  }
}

bool RunRecord::ok() const {
  return errors.empty() && std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

int RunRecord::exit_code() const {
  if (!errors.empty()) return kExitInternal;
  return ok() ? kExitOk : kExitVerdict;
}

json RunRecord::to_json() const {
  json j;
  j["artifact_version"] = CTLAB_VERSION;
  j["command"] = config.command;
  j["config"] = config.to_json();
  j["columns"] = columns;
  j["rows"] = json::array();
  for (const auto& r : rows) {
    json row = json::array();
    for (const auto& c : r) row.push_back(cell_json(c));
    j["rows"].push_back(row);
  }
  j["verdicts"] = json::array();
  for (const auto& v : verdicts) {
    j["verdicts"].push_back({{"name", v.name},
                             {"measured", v.measured},
                             {"predicted", v.predicted},
                             {"tolerance", v.tolerance},
                             {"pass", v.pass}});
  }
  j["errors"] = errors;
  j["extra"] = extra;
  j["ok"] = ok();
  j["wall_time"] = wall_time;
  return j;
}

std::string RunRecord::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_cell(columns[i]);
  os << "\r\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
    os << "\r\n";
  }
  return os.str();
}

RunRecord cmd_atlas(const RunConfig& cfg) {
  RunRecord rec;
  rec.config = cfg;
  rec.columns = {"alpha", "gamma", "m", "s", "theorem", "regime"};
  const std::vector<std::string> gammas = cfg.gammas.empty() ? std::vector<std::string>{cfg.gamma} : cfg.gammas;
  const auto ea = exact_from_text(cfg.alpha);
  const auto em = exact_from_text(cfg.m);
  json exact = json::array();
  for (const auto& gtext : gammas) {
    const auto eg = exact_from_text(gtext);
    const double g = number_from_text("gammas", gtext);
    if (ea && em && eg) {
      const ExactResult r = exponent(ExactQuery{*ea, *eg, *em});
      rec.rows.push_back({ea->to_double(), eg->to_double(), em->to_double(), r.s.to_double(),
                          to_string(r.theorem), r.regime});
      exact.push_back(r.s.str());
    } else {
      const ExponentResult r = exponent(ExponentQuery{cfg.alpha_value(), g, cfg.m_value()});
      rec.rows.push_back({cfg.alpha_value(), g, cfg.m_value(), r.s, to_string(r.theorem), r.regime});
      exact.push_back(nullptr);
    }
  }
  rec.extra["s_exact"] = exact;
  rec.extra["endpoint"] = "open: convergence at s = s(gamma) is not settled";
  if (cfg.continuity) {
    json bps = json::array();
    for (const auto& e : continuity_check(cfg.alpha_value(), cfg.m_value())) {
      rec.verdicts.push_back({"continuity at gamma=" + csv_cell(e.boundary), e.gap, 0.0, 1e-7, e.gap <= 1e-7});
      bps.push_back({{"gamma", e.boundary}, {"left", e.left}, {"right", e.right}, {"gap", e.gap}});
    }
    rec.extra["breakpoints"] = bps;
  }
  return rec;
}

RunRecord cmd_sweep(const RunConfig& cfg) {
  RunRecord rec;
  rec.config = cfg;
  rec.columns = {"family", "alpha", "gamma", "m", "b", "c", "s_order", "R", "lambda", "Q", "norm_maxfield",
                 "norm_f_l2", "norm_f_hs", "slope", "predicted_slope", "verdict"};
  std::vector<double> rs, qs;
  std::vector<std::vector<Cell>> partial;
  for (double R : cfg.scales) {
    const CounterexampleFamily fam = family_of(cfg, R);
    try {
      const QResult q = ratio_Q(fam, cfg.s, grids_of(cfg, fam));
      rs.push_back(R);
      qs.push_back(q.Q);
      partial.push_back({cfg.family, fam.alpha, fam.gamma, 2.0, fam.b, fam.c, cfg.s, R, fam.lambda(), q.Q,
                         q.norm_maxfield, q.norm_f_l2, q.norm_f_hs});
    } catch (const Error& e) {
      rec.errors.push_back("R=" + csv_cell(R) + ": " + e.what());
    }
  }
  const double predicted = predicted_Q_slope(family_of(cfg, cfg.scales.front()));
  double slope = std::nan("");
  std::string verdict = "fail";
  if (rs.size() >= 4) {
    const ExponentFit fit = fit_slope_guarded(rs, qs);
    slope = fit.slope;
    const bool pass = std::abs(slope - predicted) <= cfg.tolerance;
    verdict = pass ? "pass" : "fail";
    rec.verdicts.push_back({"Q slope", slope, predicted, cfg.tolerance, pass});
    rec.extra["fit"] = {{"slope", fit.slope},
                        {"intercept", fit.intercept},
                        {"max_residual", fit.max_residual},
                        {"dropped_first", fit.dropped_first}};
  } else {
    rec.errors.push_back("slope fit needs at least 4 successful scales, got " + std::to_string(rs.size()));
  }
  for (auto& row : partial) {
    row.insert(row.end(), {slope, predicted, verdict});
    rec.rows.push_back(std::move(row));
  }
  return rec;
}

RunRecord cmd_lowerbound(const RunConfig& cfg) {
  RunRecord rec;
  rec.config = cfg;
  rec.columns = {"family", "alpha", "gamma", "b", "c", "R", "n_nodes", "min_value", "bound", "verdict"};
  const CounterexampleFamily fam = family_of(cfg, cfg.R);
  const WitnessMode mode = cfg.witness == "zero_time" ? WitnessMode::zero_time : WitnessMode::selector;
  try {
    LowerBoundReport rep;
    if (cfg.calibrate) {
      const Calibration cal = calibrate_c(fam, cfg.nodes, mode);
      rep = cal.report;
      rec.extra["halvings"] = cal.halvings;
    } else {
      rep = witness_lower_bound(fam, cfg.nodes, mode);
    }
    rec.rows.push_back({cfg.family, fam.alpha, fam.gamma, fam.b, rep.c, fam.R,
                        static_cast<std::int64_t>(rep.n_nodes), rep.min_value, rep.bound,
                        std::string(rep.pass ? "pass" : "fail")});
    rec.verdicts.push_back({"witness minimum >= 1/(4 pi)", rep.min_value, rep.bound, 0.0, rep.pass});
    rec.extra["argmin_x"] = rep.argmin_x;
  } catch (const Error& e) {
    rec.errors.push_back(e.what());
  }
  return rec;
}

RunRecord cmd_kernelcheck(const RunConfig& cfg) {
  RunRecord rec;
  rec.config = cfg;
  rec.columns = {"lambda", "max_ratio", "schur_slope", "predicted_I_exponent", "verdict"};
  KernelSweepSpec spec;
  spec.alpha = cfg.alpha_value();
  spec.gamma = cfg.gamma_value();
  spec.lambdas = cfg.scales;
  spec.count = cfg.count;
  spec.seed = cfg.seed;
  const KernelReport rep = verify_kernel_bound(spec);
  rec.extra["beta"] = {{"beta1", rep.beta.beta1},
                       {"beta2", rep.beta.beta2},
                       {"predicted_I_exponent", rep.beta.predicted_I_exponent},
                       {"eps_flag", rep.beta.eps_flag},
                       {"row", rep.beta.row}};
  const double first = rep.levels.front().max_ratio;
  const double last = rep.levels.back().max_ratio;
  rec.verdicts.push_back({"max ratio non-growth", last / first, 2.0, 0.0, rep.non_growth});

  const EvolutionParams params{2.0, spec.gamma, true};
  const CurveSpec curve = CurveSpec::holder_tangent(spec.alpha);
  const TimeAssignment assign = structured_assignment(spec.alpha);
  std::vector<double> schur;
  for (double lambda : cfg.scales) {
    const auto ys = default_y_nodes(lambda);
    double worst = 0.0;
    for (double x : cfg.x_points) {
      worst = std::max(worst, schur_integral(x, lambda, params, curve, spec.cutoff, assign, ys));
    }
    schur.push_back(worst);
  }
  rec.extra["schur_integrals"] = schur;
  double slope = std::nan("");
  if (cfg.scales.size() >= 4) {
    slope = fit_slope(cfg.scales, schur).slope;
    const double bound = rep.beta.predicted_I_exponent + 0.15;
    rec.verdicts.push_back({"schur slope", slope, rep.beta.predicted_I_exponent, 0.15, slope <= bound});
  }
  const std::string verdict = rec.ok() ? "pass" : "fail";
  for (const KernelLevel& lv : rep.levels) {
    rec.rows.push_back({lv.lambda, lv.max_ratio, slope, rep.beta.predicted_I_exponent, verdict});
  }
  return rec;
}

RunRecord cmd_eval(const RunConfig& cfg) {
  RunRecord rec;
  rec.config = cfg;
  rec.columns = {"x", "t", "gamma_xt", "re", "im", "abs", "method"};
  const CounterexampleFamily fam = family_of(cfg, cfg.R);
  const SpectralFunction f = build_counterexample(fam, cfg.n_samples.value_or(default_counterexample_samples(fam)));
  const EvolutionParams params{cfg.m_value(), cfg.gamma_value(), true};
  const CurveSpec curve = curve_of(cfg);
  PlanOptions opt;
  opt.oversampling = cfg.oversampling;
  const PropagationPlan plan = PropagationPlan::for_curve(f, params, curve, opt);
  EvalMethod method = EvalMethod::automatic;
  if (cfg.method == "transform") method = EvalMethod::transform;
  if (cfg.method == "quadrature") method = EvalMethod::quadrature;
  const bool transform = method == EvalMethod::transform ||
                         (method == EvalMethod::automatic && cfg.x.size() > kTransformThreshold);
  for (double t : cfg.t) {
    const auto vals = evaluate_along_curve(plan, curve, cfg.x, t, method);
    for (std::size_t i = 0; i < cfg.x.size(); ++i) {
      rec.rows.push_back({cfg.x[i], t, curve_eval(curve, cfg.x[i], t), vals[i].real(), vals[i].imag(),
                          std::abs(vals[i]), std::string(transform ? "transform" : "quadrature")});
    }
  }
  return rec;
}

RunRecord run(const RunConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  if (cfg.command == "atlas") rec = cmd_atlas(cfg);
  else if (cfg.command == "sweep") rec = cmd_sweep(cfg);
  else if (cfg.command == "lowerbound") rec = cmd_lowerbound(cfg);
  else if (cfg.command == "kernelcheck") rec = cmd_kernelcheck(cfg);
  else rec = cmd_eval(cfg);
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace ctlab
