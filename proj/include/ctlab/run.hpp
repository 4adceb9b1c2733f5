#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace ctlab {

/// One experiment, as read from a JSON document and/or flags. to_json() emits
/// every field, so a record's echo re-runs the identical experiment.
struct RunConfig {
  std::string command;  ///< atlas | sweep | lowerbound | kernelcheck | eval

  std::string family = "thm31";
  std::string alpha = "1/2";  ///< kept as text so atlas can read it exactly
  std::string gamma = "1";
  std::string m = "2";
  double b = 1.0;
  double c = 0.01;
  double s = 0.0;
  std::string curve = "holder_tangent";

  std::vector<double> scales;       ///< R for sweep, lambda for kernelcheck
  std::vector<std::string> gammas;  ///< atlas gamma grid (overrides gamma)
  double R = 64.0;                  ///< lowerbound and eval

  std::optional<int> t_min_exponent;
  int steps_per_octave = 8;
  std::optional<std::size_t> n_x;
  std::optional<std::size_t> n_samples;
  double oversampling = 16.0;

  bool continuity = false;
  bool calibrate = false;
  std::string witness = "selector";
  std::size_t nodes = 256;

  std::size_t count = 500;
  std::uint64_t seed = 1;
  std::vector<double> x_points{0.0, 0.5};

  std::vector<double> x{0.0};
  std::vector<double> t{0.0};
  std::string method = "auto";

  double tolerance = 0.1;
  std::string format = "csv";
  std::string out;

  /// Reads a document; unknown fields and bad values raise ConfigError naming the field.
  static RunConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
  void validate() const;

  double alpha_value() const;
  double gamma_value() const;
  double m_value() const;
};

/// Parses a JSON document, reporting line and column on syntax errors.
nlohmann::json parse_config_text(const std::string& text);

using Cell = std::variant<double, std::int64_t, std::string>;

struct Verdict {
  std::string name;
  double measured = 0.0;
  double predicted = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct RunRecord {
  RunConfig config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<Verdict> verdicts;
  std::vector<std::string> errors;
  nlohmann::json extra = nlohmann::json::object();
  double wall_time = 0.0;

  bool ok() const;
  /// 0 all verdicts pass, 1 a verdict failed, 3 an error was recorded.
  int exit_code() const;
  nlohmann::json to_json() const;
  /// RFC 4180, floats with 17 significant digits.
  std::string to_csv() const;
};

RunRecord cmd_atlas(const RunConfig& cfg);
RunRecord cmd_sweep(const RunConfig& cfg);
RunRecord cmd_lowerbound(const RunConfig& cfg);
RunRecord cmd_kernelcheck(const RunConfig& cfg);
RunRecord cmd_eval(const RunConfig& cfg);

/// Validates and dispatches on cfg.command.
RunRecord run(const RunConfig& cfg);

/// Process exit codes.
constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

}  // namespace ctlab
