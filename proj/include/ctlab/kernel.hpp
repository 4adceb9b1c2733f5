#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ctlab/curve.hpp"
#include "ctlab/evolve.hpp"
#include "ctlab/maximal.hpp"
#include "ctlab/spectral.hpp"

namespace ctlab {

/// Psi(xi) = b((|xi| - inner) / (outer - inner)) with b the C-infinity bump
/// exp(-1/(u(1-u))) on (0, 1) scaled to peak 1. Even, positive on
/// inner < |xi| < outer.
struct CutoffSpec {
  double inner = 0.5;
  double outer = 2.0;

  void validate() const;
};

double cutoff_value(const CutoffSpec& cutoff, double xi);
/// Integral of Psi over the real line.
double cutoff_integral(const CutoffSpec& cutoff);
/// Psi(xi / lambda) sampled on [-outer lambda, outer lambda].
SpectralFunction cutoff_spectrum(const CutoffSpec& cutoff, double lambda, std::size_t n = 1025);

struct BetaChoice {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double predicted_I_exponent = 0.0;
  bool eps_flag = false;
  std::string row;  ///< "alpha range, gamma range"
};

/// The (beta1, beta2) row for (alpha, gamma); OutOfTableError if none matches.
BetaChoice beta_table(double alpha, double gamma);

/// int e^{i((G(x,t1) - G(y,t2)) xi + (t1 - t2)|xi|^m)} e^{-(t1^g + t2^g)|xi|^m} Psi(xi/lambda) dxi.
cplx kernel_eval(double x, double y, double t1, double t2, double lambda, const EvolutionParams& params,
                 const CurveSpec& curve, const CutoffSpec& cutoff);
/// Same, reusing a spectrum from cutoff_spectrum(cutoff, lambda).
cplx kernel_eval(double x, double y, double t1, double t2, const SpectralFunction& psi_lambda,
                 const EvolutionParams& params, const CurveSpec& curve);

/// max{ min(l^{-2b1} / d^{g b1/a + 1/(2a)}, l^{1-2b1} / d^{g b1/a}), l^{1/2-2b2+g b2} / d^{1/2+g b2} }, d = |x-y|.
double bound_rhs(double x, double y, double lambda, const BetaChoice& beta, double alpha, double gamma);

using TimeAssignment = std::function<double(double)>;

/// t(x) = max(x, 0)^{1/alpha}, the tangential selector extended by 0.
TimeAssignment structured_assignment(double alpha);

/// Trapezoid over ys of |K(x, y, t(x), t(y))|.
double schur_integral(double x, double lambda, const EvolutionParams& params, const CurveSpec& curve,
                      const CutoffSpec& cutoff, const TimeAssignment& t, std::span<const double> ys);

/// Uniform y nodes on [-1, 1], 8 lambda + 1 of them.
std::vector<double> default_y_nodes(double lambda);

struct KernelSweepSpec {
  double alpha = 0.5;
  double gamma = 2.0;
  std::vector<double> lambdas{16.0, 64.0, 256.0};
  std::size_t count = 500;
  std::uint64_t seed = 1;
  CutoffSpec cutoff;
};

struct KernelDraw {
  double x, y, t1, t2;
};

struct KernelLevel {
  double lambda = 0.0;
  double max_ratio = 0.0;
  KernelDraw worst{};
};

struct KernelReport {
  BetaChoice beta;
  std::vector<KernelLevel> levels;
  /// max ratio at the largest lambda <= 2 x the max ratio at the smallest.
  bool non_growth = false;
};

/// Seeded draws x != y with |x - y| >= lambda^-4, times from {0} u {2^-j}.
std::vector<KernelDraw> draw_kernel_samples(double lambda, std::size_t count, std::uint64_t seed);

KernelReport verify_kernel_bound(const KernelSweepSpec& spec);

/// int over y in [-1, 1] of min(lambda, bound_rhs(x, y)), split at
/// |x - y| = lambda^{-2 alpha}; the analytic majorant of I(x).
double majorant_integral(double x, double lambda, const BetaChoice& beta, double alpha, double gamma);

/// Fitted log-log slope of majorant_integral(0, lambda) over lambdas.
ExponentFit majorant_slope(double alpha, double gamma, std::span<const double> lambdas);

}  // namespace ctlab
