#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ctlab/counterexample.hpp"
#include "ctlab/curve.hpp"
#include "ctlab/evolve.hpp"
#include "ctlab/spectral.hpp"

namespace ctlab {

/// {0} together with 2^{t_min_exponent + k / steps_per_octave}, k >= 0, up to 1.
/// Grids whose steps_per_octave divide one another are nested exactly.
struct TimeGridSpec {
  int t_min_exponent = -20;
  int steps_per_octave = 8;

  /// Geometric ratio 2^{1/steps_per_octave}.
  double ratio() const;
  /// Inverse of ratio(); throws unless ratio is 2^{1/q} for a positive integer q.
  static int steps_for_ratio(double ratio);
};

struct TimeGrid {
  std::vector<double> nodes;
  /// extra_times[i] are analytic times sampled only at x node i.
  std::vector<std::vector<double>> extra_times;
};

/// ceil(log2 min(lambda^-2, lambda^-1/alpha)) - 4.
int default_t_min_exponent(double lambda, double alpha);

/// Geometric grid; with a family, every x node inside its set A gets t_x.
TimeGrid build_time_grid(const TimeGridSpec& spec, const CounterexampleFamily* fam,
                         std::span<const double> xs);

/// 8 * scale + 1 uniform nodes on [-1, 1], plus 256 nodes inside `dense`.
std::vector<double> default_x_nodes(double scale, std::optional<Interval> dense = std::nullopt);

struct MaximalField {
  std::vector<double> x;
  std::vector<double> values;    ///< M(x)
  std::vector<double> argmax_t;  ///< a time attaining M(x)
};

MaximalField maximal_field(const SpectralFunction& f, const EvolutionParams& params, const CurveSpec& curve,
                           std::span<const double> xs, const TimeGrid& tgrid, PlanOptions options = {});

/// sqrt of the trapezoid integral of M^2 over [a, b]; M is linear between nodes.
double l2_norm_field(const MaximalField& field, double a = -1.0, double b = 1.0);

struct QResult {
  double Q = 0.0;
  double norm_maxfield = 0.0;
  double norm_f_l2 = 0.0;
  double norm_f_hs = 0.0;
};

struct GridOverrides {
  std::optional<TimeGridSpec> time;
  std::optional<std::vector<double>> x_nodes;
  std::optional<std::size_t> n_samples;
  PlanOptions plan;
};

/// ||M f||_{L2[-1,1]} / ||f||_{H^s}; raises ZeroNormError if f vanishes.
QResult ratio_Q(const SpectralFunction& f, const EvolutionParams& params, const CurveSpec& curve, double s,
                std::span<const double> xs, const TimeGrid& tgrid, PlanOptions options = {});

/// The same ratio for f_R, with the witness times of the family on the grid.
QResult ratio_Q(const CounterexampleFamily& fam, double s, const GridOverrides& grids = {});

/// Evolution parameters the families are stated for: m = 2, damping on.
EvolutionParams family_params(const CounterexampleFamily& fam);

struct ExponentFit {
  std::vector<double> log_scale;
  std::vector<double> log_value;
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  bool dropped_first = false;
};

/// Least-squares line through (log scale, log value).
ExponentFit fit_slope(std::span<const double> scales, std::span<const double> values);

/// fit_slope, but drops the smallest scale when its residual against the line
/// through the other points exceeds three times the median residual of the
/// full fit, provided at least four points remain.
ExponentFit fit_slope_guarded(std::span<const double> scales, std::span<const double> values);

enum class WitnessMode {
  selector,   ///< t = t_x on the family's set A
  zero_time,  ///< t = 0 on (0, c / R)
};

struct LowerBoundReport {
  double c = 0.0;
  std::size_t n_nodes = 0;
  double min_value = 0.0;
  double argmin_x = 0.0;
  double bound = 0.0;  ///< 1 / (4 pi)
  bool pass = false;
};

/// min over n_nodes interior points x of |P f(Gamma(x, t), t)|, by direct quadrature.
LowerBoundReport witness_lower_bound(const CounterexampleFamily& fam, const SpectralFunction& f,
                                     std::size_t n_nodes = 256, WitnessMode mode = WitnessMode::selector);
LowerBoundReport witness_lower_bound(const CounterexampleFamily& fam, std::size_t n_nodes = 256,
                                     WitnessMode mode = WitnessMode::selector);

struct Calibration {
  double c = 0.0;
  int halvings = 0;
  LowerBoundReport report;
};

/// Halves fam.c until the witness bound holds; CalibrationError below 2^-20.
Calibration calibrate_c(CounterexampleFamily fam, std::size_t n_nodes = 256,
                        WitnessMode mode = WitnessMode::selector);

}  // namespace ctlab
