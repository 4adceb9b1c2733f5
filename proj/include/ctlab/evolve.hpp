#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ctlab/curve.hpp"
#include "ctlab/spectral.hpp"

namespace ctlab {

/// Multiplier e^{i t |xi|^m} times e^{-t^gamma |xi|^m} when damping is on.
/// m = 2 without damping is the free Schrodinger group.
struct EvolutionParams {
  double m = 2.0;
  double gamma = 1.0;
  bool damping = true;

  void validate() const;
  /// Exponent of the damping factor at time t (0 when damping is off).
  double damping_at(double t) const;
};

struct PlanOptions {
  /// Grid density relative to the Nyquist rate of the demodulated band.
  double oversampling = 16.0;
  /// Lagrange degree; the stencil has interpolation_order + 1 points.
  int interpolation_order = 7;
  double margin = 0.5;
  /// Frequencies whose damped amplitude falls below this fraction of the
  /// undamped peak are ignored when sizing the period.
  double amplitude_floor = 1e-16;
  std::size_t max_fft = std::size_t{1} << 24;
};

/// One time slice h_t on a uniform y grid. The values are stored as the
/// slowly varying envelope h_t(y) e^{-i y carrier}, which is what gets
/// interpolated.
class SampledField {
 public:
  SampledField(double y_min, double dy, double carrier, double t, std::vector<cplx> envelope);

  double y_min() const { return y_min_; }
  double y_max() const { return y_min_ + dy_ * static_cast<double>(envelope_.size() - 1); }
  double spacing() const { return dy_; }
  double carrier() const { return carrier_; }
  double t() const { return t_; }
  std::size_t size() const { return envelope_.size(); }
  double node(std::size_t j) const { return y_min_ + dy_ * static_cast<double>(j); }
  std::span<const cplx> envelope() const { return envelope_; }
  /// h_t at grid node j.
  cplx value(std::size_t j) const;
  /// h_t(y) by local Lagrange interpolation of the envelope.
  cplx interpolate(double y, int order) const;

 private:
  double y_min_;
  double dy_;
  double carrier_;
  double t_;
  std::vector<cplx> envelope_;
};

/// Everything needed to produce slices of one source: the y window the
/// queries live in, plus the spatial footprint of f used to size periods.
class PropagationPlan {
 public:
  /// Window [-1 - c3 - margin, 1 + margin] covering Gamma(x, t) for x in [-1, 1].
  static PropagationPlan for_curve(SpectralFunction source, EvolutionParams params,
                                   const CurveSpec& curve, PlanOptions options = {});
  static PropagationPlan for_window(SpectralFunction source, EvolutionParams params, double y_lo,
                                    double y_hi, PlanOptions options = {});

  const SpectralFunction& source() const { return source_; }
  const EvolutionParams& params() const { return params_; }
  const PlanOptions& options() const { return options_; }
  double y_lo() const { return y_lo_; }
  double y_hi() const { return y_hi_; }
  /// Interval outside which |f| < 1e-13 max |f|.
  double footprint_lo() const { return foot_lo_; }
  double footprint_hi() const { return foot_hi_; }

 private:
  PropagationPlan(SpectralFunction source, EvolutionParams params, double y_lo, double y_hi,
                  PlanOptions options);

  SpectralFunction source_;
  EvolutionParams params_;
  PlanOptions options_;
  double y_lo_;
  double y_hi_;
  double foot_lo_ = 0.0;
  double foot_hi_ = 0.0;
};

/// h_t(y) = (1/2pi) int e^{i(y xi + t|xi|^m)} D(t, xi) f-hat(xi) dxi on the
/// plan's window, by zero-padded inverse FFT.
SampledField propagate_slice(const PropagationPlan& plan, double t);

/// (1/2pi) int e^{i(y xi + tau |xi|^m)} e^{-delta |xi|^m} f-hat(xi) dxi by
/// composite trapezoid, refined by halving until each step advances the phase
/// by at most pi/8. With a profile attached, halving continues until two
/// successive rules agree. tau may be negative.
cplx oscillatory_synthesis(const SpectralFunction& f, double y, double tau, double delta, double m);

/// The slow trusted path: oscillatory_synthesis with tau = t and the damping
/// exponent of params.
cplx direct_quadrature(const SpectralFunction& f, const EvolutionParams& params, double y, double t);

/// sup over the support of |d/dxi (y xi + t |xi|^m)|.
double max_phase_rate(const SpectralFunction& f, const EvolutionParams& params, double y, double t);

enum class EvalMethod { automatic, transform, quadrature };

/// Queries per slice above which the automatic method picks the transform.
constexpr std::size_t kTransformThreshold = 32;

cplx evaluate_along_curve(const PropagationPlan& plan, const CurveSpec& curve, double x, double t,
                          EvalMethod method = EvalMethod::automatic);

std::vector<cplx> evaluate_along_curve(const PropagationPlan& plan, const CurveSpec& curve,
                                       std::span<const double> xs, double t,
                                       EvalMethod method = EvalMethod::automatic);

}  // namespace ctlab
