#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace ctlab {

using cplx = std::complex<double>;

/// Continuous form of f-hat, when one is known. Must vanish outside the grid.
using SpectralProfile = std::function<cplx(double)>;

/// Samples of f-hat on a uniform frequency grid
///   xi_k = xi_min + k (xi_max - xi_min) / (n - 1),  k = 0 .. n-1.
///
/// All transforms use f(x) = (1/2pi) int e^{i x xi} f-hat(xi) dxi, so that
/// ||f||_2^2 = (1/2pi) int |f-hat|^2.
///
/// Between nodes f-hat is the attached profile when there is one and the
/// piecewise-linear interpolant of the samples otherwise. Quadratures that
/// refine the grid rely on this.
class SpectralFunction {
 public:
  static SpectralFunction from_samples(double xi_min, double xi_max,
                                       std::vector<cplx> samples,
                                       std::optional<double> band = std::nullopt);

  static SpectralFunction from_profile(double xi_min, double xi_max, std::size_t n,
                                       SpectralProfile profile,
                                       std::optional<double> band = std::nullopt);

  double xi_min() const { return xi_min_; }
  double xi_max() const { return xi_max_; }
  std::size_t size() const { return samples_.size(); }
  double spacing() const { return (xi_max_ - xi_min_) / static_cast<double>(size() - 1); }
  double node(std::size_t k) const;
  std::span<const cplx> samples() const { return samples_; }
  const std::optional<double>& band() const { return band_; }
  bool has_profile() const { return static_cast<bool>(profile_); }

  /// f-hat at an arbitrary frequency; zero outside [xi_min, xi_max].
  cplx value(double xi) const;

  /// Largest |xi| over nodes carrying a nonzero sample (0 if f-hat is zero).
  double max_abs_support() const;
  /// Smallest |xi| over nodes carrying a nonzero sample.
  double min_abs_support() const;
  bool is_zero() const;

 private:
  SpectralFunction(double xi_min, double xi_max, std::vector<cplx> samples,
                   std::optional<double> band, SpectralProfile profile);
  void validate() const;

  double xi_min_;
  double xi_max_;
  std::vector<cplx> samples_;
  std::optional<double> band_;
  SpectralProfile profile_;
};

/// ((1/2pi) int (1 + xi^2)^s |f-hat|^2 dxi)^{1/2} by composite trapezoid on
/// the sample grid. s = 0 is the L2 norm.
double sobolev_norm(const SpectralFunction& f, double s);

}  // namespace ctlab
