#include "ctlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ctlab/error.hpp"
#include "ctlab/summation.hpp"

namespace ctlab {

SpectralFunction::SpectralFunction(double xi_min, double xi_max, std::vector<cplx> samples,
                                   std::optional<double> band, SpectralProfile profile)
    : xi_min_(xi_min),
      xi_max_(xi_max),
      samples_(std::move(samples)),
      band_(band),
      profile_(std::move(profile)) {
  validate();
}

SpectralFunction SpectralFunction::from_samples(double xi_min, double xi_max,
                                                std::vector<cplx> samples,
                                                std::optional<double> band) {
  return SpectralFunction(xi_min, xi_max, std::move(samples), band, {});
}

SpectralFunction SpectralFunction::from_profile(double xi_min, double xi_max, std::size_t n,
                                                SpectralProfile profile,
                                                std::optional<double> band) {
  if (n < 2) throw InvalidArgument("spectral grid needs at least 2 samples");
  if (!profile) throw InvalidArgument("empty spectral profile");
  std::vector<cplx> samples(n);
  const double h = (xi_max - xi_min) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = (k + 1 == n) ? xi_max : xi_min + static_cast<double>(k) * h;
    samples[k] = profile(xi);
  }
  return SpectralFunction(xi_min, xi_max, std::move(samples), band, std::move(profile));
}

void SpectralFunction::validate() const {
  if (samples_.size() < 2) throw InvalidArgument("spectral grid needs at least 2 samples");
  if (!std::isfinite(xi_min_) || !std::isfinite(xi_max_) || !(xi_min_ < xi_max_)) {
    throw InvalidArgument("spectral grid needs finite xi_min < xi_max");
  }
  double peak = 0.0;
  for (const cplx& s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw InvalidArgument("spectral samples must be finite");
    }
    peak = std::max(peak, std::abs(s));
  }
  if (band_) {
    const double lambda = *band_;
    if (!(lambda > 0.0)) throw InvalidArgument("band level must be positive");
    for (std::size_t k = 0; k < samples_.size(); ++k) {
      const double a = std::abs(node(k));
      const bool inside = a >= 0.5 * lambda && a <= 2.0 * lambda;
      if (!inside && std::abs(samples_[k]) > 1e-14 * peak) {
        throw SupportError("sample at xi = " + std::to_string(node(k)) +
                           " lies outside the declared band");
      }
    }
  }
}

double SpectralFunction::node(std::size_t k) const {
  if (k + 1 == samples_.size()) return xi_max_;
  return xi_min_ + static_cast<double>(k) * spacing();
}

cplx SpectralFunction::value(double xi) const {
  if (xi < xi_min_ || xi > xi_max_) return {};
  if (profile_) return profile_(xi);
  const double u = (xi - xi_min_) / spacing();
  const auto last = samples_.size() - 1;
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(u), last - 1);
  const double w = u - static_cast<double>(k);
  return (1.0 - w) * samples_[k] + w * samples_[k + 1];
}

double SpectralFunction::max_abs_support() const {
  double best = 0.0;
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    if (samples_[k] != cplx{}) best = std::max(best, std::abs(node(k)));
  }
  return best;
}

double SpectralFunction::min_abs_support() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    if (samples_[k] != cplx{}) best = std::min(best, std::abs(node(k)));
  }
  // The support hull of a function whose nonzero samples straddle zero
  // contains 0 even when no node sits there.
  if (xi_min_ < 0.0 && xi_max_ > 0.0) {
    bool neg = false, pos = false;
    std::size_t last_neg = 0, first_pos = samples_.size();
    for (std::size_t k = 0; k < samples_.size(); ++k) {
      if (samples_[k] == cplx{}) continue;
      if (node(k) < 0.0) { neg = true; last_neg = k; }
      if (node(k) > 0.0 && !pos) { pos = true; first_pos = k; }
    }
    if (neg && pos && first_pos == last_neg + 1) return 0.0;
  }
  return best;
}

bool SpectralFunction::is_zero() const {
  return std::all_of(samples_.begin(), samples_.end(), [](const cplx& s) { return s == cplx{}; });
}

double sobolev_norm(const SpectralFunction& f, double s) {
  const std::size_t n = f.size();
  const double h = f.spacing();
  std::vector<double> terms(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = f.node(k);
    const double weight = (s == 0.0) ? 1.0 : std::pow(1.0 + xi * xi, s);
    terms[k] = trapezoid_weight(k, n, h) * weight * std::norm(f.samples()[k]);
  }
  const double integral = cascade_sum(std::span<const double>(terms));
  return std::sqrt(integral / (2.0 * std::numbers::pi));
}

}  // namespace ctlab
