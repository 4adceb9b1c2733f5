#include "ctlab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ctlab/error.hpp"
#include "ctlab/parallel.hpp"
#include "ctlab/summation.hpp"

namespace ctlab {

double TimeGridSpec::ratio() const { return std::exp2(1.0 / steps_per_octave); }

int TimeGridSpec::steps_for_ratio(double ratio) {
  if (!(ratio > 1.0)) throw InvalidArgument("time grid ratio must exceed 1");
  const double q = 1.0 / std::log2(ratio);
  const double rq = std::round(q);
  if (rq < 1.0 || std::abs(q - rq) > 1e-9 * rq) {
    throw InvalidArgument("time grid ratio must be 2^(1/q) for a positive integer q, got " +
                          std::to_string(ratio));
  }
  return static_cast<int>(rq);
}

int default_t_min_exponent(double lambda, double alpha) {
  if (!(lambda > 1.0) || !(alpha > 0.0)) throw InvalidArgument("need lambda > 1 and alpha > 0");
  const double e = std::min(-2.0, -1.0 / alpha) * std::log2(lambda);
  return static_cast<int>(std::ceil(e - 1e-12)) - 4;
}

TimeGrid build_time_grid(const TimeGridSpec& spec, const CounterexampleFamily* fam, std::span<const double> xs) {
  if (spec.t_min_exponent > -2) throw InvalidArgument("t_min_exponent must be <= -2");
  if (spec.steps_per_octave < 1) throw InvalidArgument("steps_per_octave must be positive");
  TimeGrid g;
  const int q = spec.steps_per_octave;
  const long long first = static_cast<long long>(spec.t_min_exponent) * q;
  g.nodes.reserve(static_cast<std::size_t>(-first) + 2);
  g.nodes.push_back(0.0);
  // Exponents are the exact quotients (first + k) / q, so refinements nest.
  for (long long k = first; k <= 0; ++k) g.nodes.push_back(std::exp2(static_cast<double>(k) / q));

  g.extra_times.resize(xs.size());
  if (fam) {
    const Interval set = sets_AB(*fam);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (set.contains(xs[i])) g.extra_times[i].push_back(selector_t(*fam, xs[i]));
    }
  }
  return g;
}

std::vector<double> default_x_nodes(double scale, std::optional<Interval> dense) {
  const auto n = static_cast<std::size_t>(std::ceil(8.0 * scale)) + 1;
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = (i + 1 == n) ? 1.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (dense) {
    const double lo = std::max(dense->lo, -1.0);
    const double hi = std::min(dense->hi, 1.0);
    constexpr std::size_t kDense = 256;
    for (std::size_t i = 0; i < kDense && lo < hi; ++i) {
      xs.push_back(lo + (hi - lo) * (static_cast<double>(i) + 0.5) / kDense);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  }
  return xs;
}

MaximalField maximal_field(const SpectralFunction& f, const EvolutionParams& params, const CurveSpec& curve,
                           std::span<const double> xs, const TimeGrid& tgrid, PlanOptions options) {
  if (!tgrid.extra_times.empty() && tgrid.extra_times.size() != xs.size()) {
    throw InvalidArgument("extra_times must have one entry per x node");
  }
  const PropagationPlan plan = PropagationPlan::for_curve(f, params, curve, options);
  const std::size_t nt = tgrid.nodes.size();
  const std::size_t nx = xs.size();

  std::vector<std::vector<double>> mod(nt);
  parallel_for(nt, [&](std::size_t k) {
    const auto vals = evaluate_along_curve(plan, curve, xs, tgrid.nodes[k]);
    mod[k].resize(nx);
    for (std::size_t i = 0; i < nx; ++i) mod[k][i] = std::abs(vals[i]);
  });

  MaximalField out;
  out.x.assign(xs.begin(), xs.end());
  out.values.assign(nx, -1.0);
  out.argmax_t.assign(nx, 0.0);
  for (std::size_t k = 0; k < nt; ++k) {
    for (std::size_t i = 0; i < nx; ++i) {
      if (mod[k][i] > out.values[i]) {
        out.values[i] = mod[k][i];
        out.argmax_t[i] = tgrid.nodes[k];
      }
    }
  }

  if (!tgrid.extra_times.empty()) {
    std::vector<std::vector<double>> extra(nx);
    parallel_for(nx, [&](std::size_t i) {
      for (double t : tgrid.extra_times[i]) {
        extra[i].push_back(std::abs(direct_quadrature(f, params, curve_eval(curve, xs[i], t), t)));
      }
    });
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < extra[i].size(); ++j) {
        if (extra[i][j] > out.values[i]) {
          out.values[i] = extra[i][j];
          out.argmax_t[i] = tgrid.extra_times[i][j];
        }
      }
    }
  }
  for (double& v : out.values) v = std::max(v, 0.0);
  return out;
}

double l2_norm_field(const MaximalField& field, double a, double b) {
  if (!(a < b) || a < -1.0 || b > 1.0) throw InvalidArgument("norm interval must lie in [-1, 1]");
  const auto& x = field.x;
  if (x.size() < 2) throw InvalidArgument("field needs at least 2 nodes");
  auto at = [&](double p) {
    const auto it = std::upper_bound(x.begin(), x.end(), p);
    if (it == x.begin()) return field.values.front();
    if (it == x.end()) return field.values.back();
    const auto k = static_cast<std::size_t>(it - x.begin());
    const double w = (p - x[k - 1]) / (x[k] - x[k - 1]);
    return (1.0 - w) * field.values[k - 1] + w * field.values[k];
  };
  std::vector<std::pair<double, double>> pts;
  pts.emplace_back(a, at(a));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > a && x[i] < b) pts.emplace_back(x[i], field.values[i]);
  }
  pts.emplace_back(b, at(b));
  std::vector<double> pieces(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double m0 = pts[i].second, m1 = pts[i + 1].second;
    pieces[i] = 0.5 * (pts[i + 1].first - pts[i].first) * (m0 * m0 + m1 * m1);
  }
  return std::sqrt(cascade_sum(std::span<const double>(pieces)));
}

QResult ratio_Q(const SpectralFunction& f, const EvolutionParams& params, const CurveSpec& curve, double s,
                std::span<const double> xs, const TimeGrid& tgrid, PlanOptions options) {
  QResult r;
  r.norm_f_l2 = sobolev_norm(f, 0.0);
  r.norm_f_hs = s == 0.0 ? r.norm_f_l2 : sobolev_norm(f, s);
  if (!(r.norm_f_hs > 0.0)) throw ZeroNormError("Q is undefined for a source with zero norm");
  r.norm_maxfield = l2_norm_field(maximal_field(f, params, curve, xs, tgrid, options));
  r.Q = r.norm_maxfield / r.norm_f_hs;
  return r;
}

EvolutionParams family_params(const CounterexampleFamily& fam) { return {2.0, fam.gamma, true}; }

QResult ratio_Q(const CounterexampleFamily& fam, double s, const GridOverrides& grids) {
  const Interval set = sets_AB(fam);
  const SpectralFunction f =
      build_counterexample(fam, grids.n_samples.value_or(default_counterexample_samples(fam)));
  const std::vector<double> xs = grids.x_nodes.value_or(default_x_nodes(fam.R, set));
  const TimeGridSpec tspec =
      grids.time.value_or(TimeGridSpec{default_t_min_exponent(fam.lambda(), fam.alpha), 8});
  const TimeGrid tgrid = build_time_grid(tspec, &fam, xs);
  return ratio_Q(f, family_params(fam), fam.curve(), s, xs, tgrid, grids.plan);
}

namespace {

ExponentFit least_squares(std::vector<double> lx, std::vector<double> ly) {
  const std::size_t n = lx.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    fit.max_residual = std::max(fit.max_residual, std::abs(ly[i] - fit.intercept - fit.slope * lx[i]));
  }
  fit.log_scale = std::move(lx);
  fit.log_value = std::move(ly);
  return fit;
}

}  // namespace

ExponentFit fit_slope(std::span<const double> scales, std::span<const double> values) {
  if (scales.size() != values.size()) throw InvalidArgument("scales and values differ in length");
  if (scales.size() < 4) throw InvalidArgument("a slope fit needs at least 4 points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw DegenerateSeriesError("value " + std::to_string(values[i]) + " at index " + std::to_string(i) +
                                  " is not positive");
    }
    if (!(scales[i] > 0.0) || (i > 0 && !(scales[i] > scales[i - 1]))) {
      throw InvalidArgument("scales must be positive and strictly increasing");
    }
    lx.push_back(std::log(scales[i]));
    ly.push_back(std::log(values[i]));
  }
  return least_squares(std::move(lx), std::move(ly));
}

ExponentFit fit_slope_guarded(std::span<const double> scales, std::span<const double> values) {
  ExponentFit fit = fit_slope(scales, values);
  if (scales.size() < 5) return fit;
  std::vector<double> res(scales.size());
  for (std::size_t i = 0; i < res.size(); ++i) {
    res[i] = std::abs(fit.log_value[i] - fit.intercept - fit.slope * fit.log_scale[i]);
  }
  std::vector<double> sorted = res;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
  const double median = sorted[sorted.size() / 2];
  // The first point's residual is taken against the fit of the other points;
  // in the joint fit a lone outlier pulls the line and never exceeds 3x.
  ExponentFit trimmed = fit_slope(scales.subspan(1), values.subspan(1));
  const double lead = std::abs(fit.log_value[0] - trimmed.intercept - trimmed.slope * fit.log_scale[0]);
  if (lead > 3.0 * median) {
    trimmed.dropped_first = true;
    return trimmed;
  }
  return fit;
}

LowerBoundReport witness_lower_bound(const CounterexampleFamily& fam, const SpectralFunction& f,
                                     std::size_t n_nodes, WitnessMode mode) {
  if (n_nodes == 0) throw InvalidArgument("witness needs at least one node");
  if (sobolev_norm(f, 0.0) == 0.0) throw ZeroNormError("witness source has zero norm");
  const Interval set = mode == WitnessMode::selector ? sets_AB(fam) : Interval{0.0, fam.c / fam.R};
  const EvolutionParams params = family_params(fam);
  const CurveSpec curve = fam.curve();

  std::vector<double> vals(n_nodes);
  std::vector<double> xs(n_nodes);
  parallel_for(n_nodes, [&](std::size_t i) {
    const double x = set.lo + set.width() * (static_cast<double>(i) + 0.5) / static_cast<double>(n_nodes);
    const double t = mode == WitnessMode::selector ? selector_t(fam, x) : 0.0;
    xs[i] = x;
    vals[i] = std::abs(direct_quadrature(f, params, curve_eval(curve, x, t), t));
  });

  LowerBoundReport rep;
  rep.c = fam.c;
  rep.n_nodes = n_nodes;
  rep.bound = 1.0 / (4.0 * std::numbers::pi);
  const auto it = std::min_element(vals.begin(), vals.end());
  rep.min_value = *it;
  rep.argmin_x = xs[static_cast<std::size_t>(it - vals.begin())];
  rep.pass = rep.min_value >= rep.bound;
  return rep;
}

LowerBoundReport witness_lower_bound(const CounterexampleFamily& fam, std::size_t n_nodes, WitnessMode mode) {
  return witness_lower_bound(fam, build_counterexample(fam, default_counterexample_samples(fam)), n_nodes, mode);
}

Calibration calibrate_c(CounterexampleFamily fam, std::size_t n_nodes, WitnessMode mode) {
  constexpr double kFloor = 1.0 / 1048576.0;  // 2^-20
  Calibration cal;
  for (;;) {
    cal.report = witness_lower_bound(fam, n_nodes, mode);
    cal.c = fam.c;
    if (cal.report.pass) return cal;
    fam.c *= 0.5;
    ++cal.halvings;
    if (fam.c < kFloor) {
      throw CalibrationError("no c >= 2^-20 certifies the 1/(4 pi) bound; last minimum " +
                             std::to_string(cal.report.min_value));
    }
  }
}

}  // namespace ctlab
