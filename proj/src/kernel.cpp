#include "ctlab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ctlab/error.hpp"
#include "ctlab/parallel.hpp"
#include "ctlab/summation.hpp"

namespace ctlab {

namespace {

double unit_bump(double u) {
  if (!(u > 0.0 && u < 1.0)) return 0.0;
  return std::exp(4.0 - 1.0 / (u * (1.0 - u)));
}

// Integral of unit_bump over (0, 1). The integrand is flat to all orders at
// both ends, so the trapezoid rule converges spectrally.
double unit_bump_integral() {
  static const double value = [] {
    constexpr std::size_t n = 1 << 12;
    std::vector<double> v(n + 1);
    for (std::size_t k = 0; k <= n; ++k) v[k] = unit_bump(static_cast<double>(k) / n);
    return cascade_sum(std::span<const double>(v)) / n;
  }();
  return value;
}

// log of the majorant at distance d, in log space so huge lambdas and tiny
// distances do not overflow.
double log_bound(double log_d, double log_l, const BetaChoice& b, double alpha, double gamma) {
  const double p1 = gamma * b.beta1 / alpha;
  const double first = std::min(-2.0 * b.beta1 * log_l - (p1 + 0.5 / alpha) * log_d,
                                (1.0 - 2.0 * b.beta1) * log_l - p1 * log_d);
  const double second = (0.5 - 2.0 * b.beta2 + gamma * b.beta2) * log_l - (0.5 + gamma * b.beta2) * log_d;
  return std::max(first, second);
}

}  // namespace

void CutoffSpec::validate() const {
  if (!(inner > 0.0 && inner < outer)) throw InvalidArgument("cutoff needs 0 < inner < outer");
}

double cutoff_value(const CutoffSpec& cutoff, double xi) {
  return unit_bump((std::abs(xi) - cutoff.inner) / (cutoff.outer - cutoff.inner));
}

double cutoff_integral(const CutoffSpec& cutoff) {
  cutoff.validate();
  return 2.0 * (cutoff.outer - cutoff.inner) * unit_bump_integral();
}

SpectralFunction cutoff_spectrum(const CutoffSpec& cutoff, double lambda, std::size_t n) {
  cutoff.validate();
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  const double reach = cutoff.outer * lambda;
  return SpectralFunction::from_profile(
      -reach, reach, n, [cutoff, lambda](double xi) { return cplx(cutoff_value(cutoff, xi / lambda), 0.0); });
}

BetaChoice beta_table(double alpha, double gamma) {
  if (!(alpha > 0.0 && alpha <= 1.0) || !(gamma > 0.0) || !std::isfinite(gamma)) {
    throw OutOfTableError("no table row for alpha = " + std::to_string(alpha) +
                          ", gamma = " + std::to_string(gamma));
  }
  const double a = alpha, g = gamma;
  auto row = [](double b1, double b2, double e, bool eps, std::string label) {
    return BetaChoice{b1, b2, e, eps, std::move(label)};
  };
  if (a >= 0.5) {
    if (g < 1.0) return row(0.0, 0.5 / g, 0.0, false, "[1/2,1], (0,1)");
    if (g < 2.0) return row(0.0, 0.5 / g, 1.0 - 1.0 / g, true, "[1/2,1], [1,2)");
    return row(0.0, 0.0, 0.5, false, "[1/2,1], [2,inf)");
  }
  if (a <= 0.25) {
    if (g < 2.0 * a) return row(a / g, 0.5 / g, 0.0, false, "(0,1/4], (0,2a)");
    if (g < 1.0) return row(a / g, 0.5 / g, 1.0 - 2.0 * a / g, true, "(0,1/4], [2a,1)");
    return row(0.0, 0.0, 1.0 - 2.0 * a, false, "(0,1/4], [1,inf)");
  }
  if (g < 2.0 * a) return row(a / g, 0.5 / g, 0.0, false, "(1/4,1/2), (0,2a)");
  if (g < 1.0) return row(a / g, 0.5 / g, 1.0 - 2.0 * a / g, true, "(1/4,1/2), [2a,1)");
  if (g < 0.5 / a) return row(0.0, 0.5 / g, 1.0 - 2.0 * a, false, "(1/4,1/2), [1,1/(2a))");
  if (g < 2.0) return row(0.0, 0.5 / g, 1.0 - 1.0 / g, true, "(1/4,1/2), [1/(2a),2)");
  return row(0.0, 0.0, 0.5, false, "(1/4,1/2), [2,inf)");
}

cplx kernel_eval(double x, double y, double t1, double t2, const SpectralFunction& psi_lambda,
                 const EvolutionParams& params, const CurveSpec& curve) {
  if (!(t1 >= 0.0 && t1 <= 1.0 && t2 >= 0.0 && t2 <= 1.0)) throw RangeError("kernel times must lie in [0, 1]");
  const double dg = curve_eval(curve, x, t1) - curve_eval(curve, y, t2);
  const double delta = params.damping_at(t1) + params.damping_at(t2);
  // oscillatory_synthesis carries the 1/(2 pi) of the inverse transform.
  return 2.0 * std::numbers::pi * oscillatory_synthesis(psi_lambda, dg, t1 - t2, delta, params.m);
}

cplx kernel_eval(double x, double y, double t1, double t2, double lambda, const EvolutionParams& params,
                 const CurveSpec& curve, const CutoffSpec& cutoff) {
  if (!(lambda >= 4.0)) throw InvalidArgument("kernel needs lambda >= 4");
  return kernel_eval(x, y, t1, t2, cutoff_spectrum(cutoff, lambda), params, curve);
}

double bound_rhs(double x, double y, double lambda, const BetaChoice& beta, double alpha, double gamma) {
  if (x == y) throw CoincidenceError("the kernel bound is singular at x = y");
  if (!(lambda >= 4.0)) throw InvalidArgument("bound needs lambda >= 4");
  return std::exp(log_bound(std::log(std::abs(x - y)), std::log(lambda), beta, alpha, gamma));
}

TimeAssignment structured_assignment(double alpha) {
  return [alpha](double x) { return x > 0.0 ? std::min(1.0, std::pow(x, 1.0 / alpha)) : 0.0; };
}

double schur_integral(double x, double lambda, const EvolutionParams& params, const CurveSpec& curve,
                      const CutoffSpec& cutoff, const TimeAssignment& t, std::span<const double> ys) {
  if (ys.size() < 2) throw InvalidArgument("schur integral needs at least 2 y nodes");
  const SpectralFunction psi = cutoff_spectrum(cutoff, lambda);
  const double tx = t(x);
  std::vector<double> mod(ys.size());
  parallel_for(ys.size(), [&](std::size_t i) {
    mod[i] = std::abs(kernel_eval(x, ys[i], tx, t(ys[i]), psi, params, curve));
  });
  std::vector<double> pieces(ys.size() - 1);
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) pieces[i] = 0.5 * (ys[i + 1] - ys[i]) * (mod[i] + mod[i + 1]);
  return cascade_sum(std::span<const double>(pieces));
}

std::vector<double> default_y_nodes(double lambda) {
  const auto n = static_cast<std::size_t>(std::ceil(8.0 * lambda)) + 1;
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    ys[i] = (i + 1 == n) ? 1.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return ys;
}

std::vector<KernelDraw> draw_kernel_samples(double lambda, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Explicit mappings keep draws identical across standard libraries.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const auto jmax = static_cast<std::uint64_t>(std::ceil(2.0 * std::log2(lambda)));
  auto time = [&] {
    const std::uint64_t k = rng() % (jmax + 2);
    return k == 0 ? 0.0 : std::exp2(-static_cast<double>(k - 1));
  };
  const double min_gap = std::pow(lambda, -4.0);
  std::vector<KernelDraw> out(count);
  for (auto& d : out) {
    do {
      d.x = 2.0 * uniform() - 1.0;
      d.y = 2.0 * uniform() - 1.0;
    } while (std::abs(d.x - d.y) < min_gap);
    d.t1 = time();
    d.t2 = time();
  }
  return out;
}

KernelReport verify_kernel_bound(const KernelSweepSpec& spec) {
  if (spec.count < 100) throw InvalidArgument("kernel sweep needs at least 100 samples per lambda");
  if (spec.lambdas.empty()) throw InvalidArgument("kernel sweep needs at least one lambda");
  KernelReport rep;
  rep.beta = beta_table(spec.alpha, spec.gamma);
  const EvolutionParams params{2.0, spec.gamma, true};
  const CurveSpec curve = CurveSpec::holder_tangent(spec.alpha);
  for (std::size_t li = 0; li < spec.lambdas.size(); ++li) {
    const double lambda = spec.lambdas[li];
    const auto draws = draw_kernel_samples(lambda, spec.count, spec.seed + li);
    const SpectralFunction psi = cutoff_spectrum(spec.cutoff, lambda);
    std::vector<double> ratio(draws.size());
    parallel_for(draws.size(), [&](std::size_t i) {
      const KernelDraw& d = draws[i];
      const double k = std::abs(kernel_eval(d.x, d.y, d.t1, d.t2, psi, params, curve));
      ratio[i] = k / bound_rhs(d.x, d.y, lambda, rep.beta, spec.alpha, spec.gamma);
    });
    const auto it = std::max_element(ratio.begin(), ratio.end());
    rep.levels.push_back({lambda, *it, draws[static_cast<std::size_t>(it - ratio.begin())]});
  }
  rep.non_growth = rep.levels.back().max_ratio <= 2.0 * rep.levels.front().max_ratio;
  return rep;
}

double majorant_integral(double x, double lambda, const BetaChoice& beta, double alpha, double gamma) {
  if (!(x >= -1.0 && x <= 1.0)) throw InvalidArgument("x must lie in [-1, 1]");
  const double log_l = std::log(lambda);
  const double split = -2.0 * alpha * log_l;
  // Below d_min the integrand is capped at lambda; that piece is lambda d_min.
  const double log_dmin = -6.0 * log_l;
  auto side = [&](double reach) {
    if (reach <= 0.0) return 0.0;
    const double log_hi = std::log(reach);
    double total = std::exp(log_l + log_dmin);
    // Trapezoid in s = log d on [log_dmin, split] and [split, log_hi].
    auto piece = [&](double a, double b) {
      if (!(b > a)) return 0.0;
      constexpr std::size_t n = 8192;
      std::vector<double> v(n + 1);
      const double h = (b - a) / n;
      for (std::size_t k = 0; k <= n; ++k) {
        const double s = a + h * static_cast<double>(k);
        const double lf = std::min(log_l, log_bound(s, log_l, beta, alpha, gamma));
        v[k] = std::exp(lf + s) * ((k == 0 || k == n) ? 0.5 * h : h);
      }
      return cascade_sum(std::span<const double>(v));
    };
    const double mid = std::clamp(split, log_dmin, log_hi);
    total += piece(log_dmin, mid) + piece(mid, log_hi);
    return total;
  };
  return side(1.0 + x) + side(1.0 - x);
}

ExponentFit majorant_slope(double alpha, double gamma, std::span<const double> lambdas) {
  const BetaChoice beta = beta_table(alpha, gamma);
  std::vector<double> vals;
  for (double l : lambdas) vals.push_back(majorant_integral(0.0, l, beta, alpha, gamma));
  return fit_slope(lambdas, vals);
}

}  // namespace ctlab
