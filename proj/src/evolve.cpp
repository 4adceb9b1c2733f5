#include "ctlab/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ctlab/error.hpp"
#include "ctlab/parallel.hpp"
#include "ctlab/summation.hpp"
#include "fft.hpp"

namespace ctlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;

// Beyond this exponent the damped integrand is below 1e-40 of the undamped one.
constexpr double kNegligibleDamping = 92.0;
constexpr double kSettleTolerance = 1e-13;

// Footprint threshold relative to max |f|.
constexpr double kFootprintFloor = 1e-13;

cplx unit(long double phase) {
  const long double r = std::fmod(phase, kTwoPiL);
  const double p = static_cast<double>(r);
  return {std::cos(p), std::sin(p)};
}

long double abs_pow(long double xi, double m) {
  const long double a = std::fabs(xi);
  if (m == 2.0) return a * a;
  if (m == 1.0) return a;
  return std::pow(a, static_cast<long double>(m));
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// The source on a grid refined by 2^r. Nodes are xi_min + k dxi.
struct Refined {
  double xi_min;
  double dxi;
  std::size_t count;
};

Refined refine(const SpectralFunction& f, unsigned r) {
  const std::size_t scale = std::size_t{1} << r;
  return {f.xi_min(), f.spacing() / static_cast<double>(scale), (f.size() - 1) * scale + 1};
}

cplx refined_value(const SpectralFunction& f, unsigned r, std::size_t k) {
  if (r == 0) return f.samples()[k];
  const std::size_t scale = std::size_t{1} << r;
  if (k % scale == 0) return f.samples()[k / scale];
  return f.value(f.xi_min() + static_cast<double>(k) * f.spacing() / static_cast<double>(scale));
}

// max |xi|^{m-1} over the nonzero support; infinite when m < 1 and the
// support reaches 0.
double rate_factor(const SpectralFunction& f, double m) {
  if (f.is_zero()) return 0.0;
  if (m >= 1.0) return std::pow(f.max_abs_support(), m - 1.0);
  const double lo = f.min_abs_support();
  return lo > 0.0 ? std::pow(lo, m - 1.0) : std::numeric_limits<double>::infinity();
}

// Fills buf with w_k F_k e^{i(tau|xi_k|^m + y0 k dxi)} e^{-delta|xi_k|^m}
// on the refined grid, zero padded, and inverse transforms it.
void synthesize(const SpectralFunction& f, unsigned r, double tau, double delta, double m, double y0,
                detail::FftBuffer& buf) {
  const Refined g = refine(f, r);
  for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = {};
  for (std::size_t k = 0; k < g.count; ++k) {
    const cplx v = refined_value(f, r, k);
    if (v == cplx{}) continue;
    const long double xi = static_cast<long double>(g.xi_min) + static_cast<long double>(k) * g.dxi;
    const long double am = abs_pow(xi, m);
    const long double phase = static_cast<long double>(tau) * am +
                              static_cast<long double>(y0) * static_cast<long double>(k) * g.dxi;
    const double damp = delta > 0.0 ? std::exp(-delta * static_cast<double>(am)) : 1.0;
    buf[k] = trapezoid_weight(k, g.count, g.dxi) * damp * v * unit(phase);
  }
  detail::inverse_dft(buf);
}

struct Footprint {
  double lo;
  double hi;
};

// Support of |f| above kFootprintFloor of its peak, read off the complement
// of the largest circular run of small values on an FFT grid.
Footprint find_footprint(const SpectralFunction& f, const PlanOptions& opt) {
  if (f.is_zero()) return {0.0, 0.0};
  for (unsigned r = 0;; ++r) {
    const Refined g = refine(f, r);
    const std::size_t n = next_pow2(4 * g.count);
    const double period = kTwoPi / g.dxi;
    const double dy = period / static_cast<double>(n);
    const double y0 = -0.5 * period;
    const bool last = 2 * n > opt.max_fft;
    if (n > opt.max_fft) throw RangeError("source footprint exceeds the transform size limit");

    detail::FftBuffer buf(n);
    synthesize(f, r, 0.0, 0.0, 1.0, y0, buf);
    double peak = 0.0;
    for (std::size_t j = 0; j < n; ++j) peak = std::max(peak, std::abs(buf[j]));
    const double floor = kFootprintFloor * peak;

    std::size_t best_len = 0, best_end = 0, run = 0;
    // Two passes over the circle catch runs that wrap through index 0.
    for (std::size_t i = 0; i < 2 * n; ++i) {
      if (std::abs(buf[i % n]) < floor) {
        run = std::min(run + 1, n);
        if (run > best_len) {
          best_len = run;
          best_end = i % n;
        }
      } else {
        run = 0;
      }
    }
    if (best_len >= n / 2 || last) {
      if (best_len == 0) return {y0, y0 + period};
      // Footprint starts right after the gap and spans n - best_len nodes.
      const std::size_t start = (best_end + 1) % n;
      const std::size_t len = n - best_len;
      double lo = y0 + dy * static_cast<double>(start);
      double hi = lo + dy * static_cast<double>(len == 0 ? 0 : len - 1);
      const double mid = 0.5 * (lo + hi);
      const double shift = period * std::round(mid / period);
      return {lo - shift - 2.0 * dy, hi - shift + 2.0 * dy};
    }
  }
}

}  // namespace

void EvolutionParams::validate() const {
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("dispersion exponent m must be positive");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be positive");
}

double EvolutionParams::damping_at(double t) const {
  return (damping && t > 0.0) ? std::pow(t, gamma) : 0.0;
}

SampledField::SampledField(double y_min, double dy, double carrier, double t, std::vector<cplx> envelope)
    : y_min_(y_min), dy_(dy), carrier_(carrier), t_(t), envelope_(std::move(envelope)) {
  if (envelope_.size() < 2 || !(dy > 0.0)) throw InvalidArgument("sampled field needs >= 2 nodes");
}

cplx SampledField::value(std::size_t j) const {
  const long double y = static_cast<long double>(y_min_) + static_cast<long double>(j) * dy_;
  return envelope_.at(j) * unit(y * carrier_);
}

cplx SampledField::interpolate(double y, int order) const {
  const std::size_t p = static_cast<std::size_t>(order) + 1;
  if (order < 1 || p > envelope_.size()) throw InvalidArgument("interpolation order does not fit the grid");
  const double s = (y - y_min_) / dy_;
  if (!(s >= 0.0 && s <= static_cast<double>(envelope_.size() - 1))) {
    throw RangeError("query y = " + std::to_string(y) + " outside the slice grid [" +
                     std::to_string(y_min()) + ", " + std::to_string(y_max()) + "]");
  }
  const auto base = static_cast<long long>(std::floor(s)) - static_cast<long long>((p - 1) / 2);
  const auto j0 = static_cast<std::size_t>(
      std::clamp<long long>(base, 0, static_cast<long long>(envelope_.size() - p)));
  const double u = s - static_cast<double>(j0);

  cplx env{};
  bool on_node = false;
  for (std::size_t i = 0; i < p; ++i) {
    if (u == static_cast<double>(i)) {
      env = envelope_[j0 + i];
      on_node = true;
      break;
    }
  }
  if (!on_node) {
    for (std::size_t i = 0; i < p; ++i) {
      double w = 1.0;
      for (std::size_t k = 0; k < p; ++k) {
        if (k != i) w *= (u - static_cast<double>(k)) / (static_cast<double>(i) - static_cast<double>(k));
      }
      env += w * envelope_[j0 + i];
    }
  }
  return env * unit(static_cast<long double>(y) * carrier_);
}

PropagationPlan::PropagationPlan(SpectralFunction source, EvolutionParams params, double y_lo, double y_hi,
                                 PlanOptions options)
    : source_(std::move(source)), params_(params), options_(options), y_lo_(y_lo), y_hi_(y_hi) {
  params_.validate();
  if (!(y_lo < y_hi)) throw InvalidArgument("plan window needs y_lo < y_hi");
  if (!(options_.oversampling >= 2.0)) {
    throw ResolutionError("oversampling " + std::to_string(options_.oversampling) +
                          " is below the Nyquist-safe minimum of 2");
  }
  if (options_.interpolation_order < 1 || options_.interpolation_order > 15) {
    throw InvalidArgument("interpolation order must lie in [1, 15]");
  }
  const Footprint fp = find_footprint(source_, options_);
  foot_lo_ = fp.lo;
  foot_hi_ = fp.hi;
}

PropagationPlan PropagationPlan::for_curve(SpectralFunction source, EvolutionParams params,
                                           const CurveSpec& curve, PlanOptions options) {
  curve.validate();
  const double reach = curve.c2 + curve.c3 + options.margin;
  return PropagationPlan(std::move(source), params, -reach, reach, options);
}

PropagationPlan PropagationPlan::for_window(SpectralFunction source, EvolutionParams params, double y_lo,
                                            double y_hi, PlanOptions options) {
  return PropagationPlan(std::move(source), params, y_lo, y_hi, options);
}

SampledField propagate_slice(const PropagationPlan& plan, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw RangeError("slice time must lie in [0, 1]");
  const SpectralFunction& f = plan.source();
  const EvolutionParams& par = plan.params();
  const PlanOptions& opt = plan.options();
  const double delta = par.damping_at(t);
  const double carrier = 0.5 * (f.xi_min() + f.xi_max());
  const double half_band = 0.5 * (f.xi_max() - f.xi_min());

  // Frequencies that survive the damping decide how far the slice spreads.
  double peak = 0.0;
  for (const cplx& v : f.samples()) peak = std::max(peak, std::abs(v));
  double d_lo = std::numeric_limits<double>::infinity();
  double d_hi = -d_lo;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double xi = f.node(k);
    const double a = std::abs(xi);
    const double amp = std::abs(f.samples()[k]) * std::exp(-delta * std::pow(a, par.m));
    if (!(amp >= opt.amplitude_floor * peak) || amp == 0.0) continue;
    if (a == 0.0 && par.m < 1.0) continue;
    const double shift = a == 0.0 ? 0.0 : -t * par.m * std::pow(a, par.m - 1.0) * (xi > 0.0 ? 1.0 : -1.0);
    d_lo = std::min(d_lo, shift);
    d_hi = std::max(d_hi, shift);
  }
  if (d_lo > d_hi) {
    // Nothing survives: the slice is zero to within the amplitude floor.
    const std::size_t n = 16;
    return SampledField(plan.y_lo(), (plan.y_hi() - plan.y_lo()) / static_cast<double>(n - 1), carrier, t,
                        std::vector<cplx>(n));
  }

  const double ext_lo = std::min(plan.y_lo(), plan.footprint_lo() + d_lo);
  const double ext_hi = std::max(plan.y_hi(), plan.footprint_hi() + d_hi);
  const double extent = ext_hi - ext_lo;
  if (!std::isfinite(extent)) throw RangeError("dispersive range is unbounded at t = " + std::to_string(t));

  unsigned r = 0;
  while (kTwoPi / refine(f, r).dxi < 2.0 * extent) {
    ++r;
    if (refine(f, r).count > opt.max_fft) {
      throw RangeError("dispersive range " + std::to_string(extent) + " at t = " + std::to_string(t) +
                       " needs more than the transform size limit");
    }
  }
  const Refined g = refine(f, r);
  const auto want = static_cast<std::size_t>(std::ceil(opt.oversampling * static_cast<double>(g.count - 1)));
  const std::size_t n = next_pow2(std::max(want, g.count));
  if (n > opt.max_fft) {
    throw RangeError("slice at t = " + std::to_string(t) + " needs a transform of " + std::to_string(n) +
                     " points");
  }
  const double period = kTwoPi / g.dxi;
  const double dy = period / static_cast<double>(n);
  const double y0 = 0.5 * (ext_lo + ext_hi) - 0.5 * period;

  detail::FftBuffer buf(n);
  synthesize(f, r, t, delta, par.m, y0, buf);

  const auto pad = static_cast<long long>(opt.interpolation_order) + 2;
  const long long j_lo = std::max<long long>(0, static_cast<long long>(std::floor((plan.y_lo() - y0) / dy)) - pad);
  const long long j_hi = std::min<long long>(static_cast<long long>(n) - 1,
                                             static_cast<long long>(std::ceil((plan.y_hi() - y0) / dy)) + pad);
  std::vector<cplx> env(static_cast<std::size_t>(j_hi - j_lo + 1));
  for (long long j = j_lo; j <= j_hi; ++j) {
    const long double y = static_cast<long double>(y0) + static_cast<long double>(j) * dy;
    // h(y_j) = e^{i y_j xi_min} buf_j / 2pi, and the envelope drops the carrier.
    env[static_cast<std::size_t>(j - j_lo)] = buf[static_cast<std::size_t>(j)] * unit(-y * half_band) / kTwoPi;
  }
  return SampledField(y0 + dy * static_cast<double>(j_lo), dy, carrier, t, std::move(env));
}

cplx oscillatory_synthesis(const SpectralFunction& f, double y, double tau, double delta, double m) {
  if (f.is_zero()) return {};
  if (delta > 0.0 && delta * std::pow(f.min_abs_support(), m) > kNegligibleDamping) return {};

  const double factor = rate_factor(f, m);
  const double rate = std::abs(y) + (std::abs(tau) + delta) * m * factor;
  constexpr std::size_t kMaxNodes = std::size_t{1} << 24;
  unsigned r = 0;
  while (refine(f, r).dxi * rate > std::numbers::pi / 8.0 && refine(f, r + 1).count <= kMaxNodes) ++r;

  // Block partial sums in a fixed layout, then a pairwise pass over blocks.
  // Also returns the sum of term moduli, the scale for convergence checks.
  const auto trapezoid = [&](unsigned level) {
    const Refined g = refine(f, level);
    constexpr std::size_t kBlock = 4096;
    const std::size_t blocks = (g.count + kBlock - 1) / kBlock;
    std::vector<cplx> partial(blocks);
    std::vector<cplx> terms(kBlock);
    double mass = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t k0 = b * kBlock;
      const std::size_t k1 = std::min(g.count, k0 + kBlock);
      for (std::size_t k = k0; k < k1; ++k) {
        const cplx v = refined_value(f, level, k);
        if (v == cplx{}) {
          terms[k - k0] = {};
          continue;
        }
        const long double xi = static_cast<long double>(g.xi_min) + static_cast<long double>(k) * g.dxi;
        const long double am = abs_pow(xi, m);
        const long double phase = static_cast<long double>(y) * xi + static_cast<long double>(tau) * am;
        const double damp = delta > 0.0 ? std::exp(-delta * static_cast<double>(am)) : 1.0;
        terms[k - k0] = trapezoid_weight(k, g.count, g.dxi) * damp * v * unit(phase);
        mass += std::abs(terms[k - k0]);
      }
      partial[b] = cascade_sum(std::span<const cplx>(terms.data(), k1 - k0));
    }
    return std::pair{cascade_sum(std::span<const cplx>(partial)), mass};
  };

  cplx sum = trapezoid(r).first;
  // A profile may vary faster than its sample grid shows, so halve the step
  // until the rule settles. Sample-only spectra are linear between nodes and
  // need no such pass.
  if (f.has_profile()) {
    while (refine(f, r + 1).count <= kMaxNodes) {
      const auto [next, next_mass] = trapezoid(++r);
      const bool settled = std::abs(next - sum) <= kSettleTolerance * next_mass;
      sum = next;
      if (settled) break;
    }
  }
  return sum / kTwoPi;
}

cplx direct_quadrature(const SpectralFunction& f, const EvolutionParams& params, double y, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw RangeError("time must lie in [0, 1]");
  return oscillatory_synthesis(f, y, t, params.damping_at(t), params.m);
}

double max_phase_rate(const SpectralFunction& f, const EvolutionParams& params, double y, double t) {
  if (t == 0.0 || f.is_zero()) return std::abs(y);
  return std::abs(y) + t * params.m * rate_factor(f, params.m);
}

cplx evaluate_along_curve(const PropagationPlan& plan, const CurveSpec& curve, double x, double t,
                          EvalMethod method) {
  const double xs[1] = {x};
  return evaluate_along_curve(plan, curve, std::span<const double>(xs), t, method)[0];
}

std::vector<cplx> evaluate_along_curve(const PropagationPlan& plan, const CurveSpec& curve,
                                       std::span<const double> xs, double t, EvalMethod method) {
  if (!(t >= 0.0 && t <= 1.0)) throw RangeError("time must lie in [0, 1]");
  if (method == EvalMethod::automatic) {
    method = xs.size() > kTransformThreshold ? EvalMethod::transform : EvalMethod::quadrature;
  }
  std::vector<cplx> out(xs.size());
  if (method == EvalMethod::transform) {
    const SampledField slice = propagate_slice(plan, t);
    const int order = plan.options().interpolation_order;
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = slice.interpolate(curve_eval(curve, xs[i], t), order);
  } else {
    parallel_for(xs.size(), [&](std::size_t i) {
      out[i] = direct_quadrature(plan.source(), plan.params(), curve_eval(curve, xs[i], t), t);
    });
  }
  return out;
}

}  // namespace ctlab
