#pragma once

#include <cstddef>
#include <string>

#include "ctlab/curve.hpp"
#include "ctlab/spectral.hpp"

namespace ctlab {

enum class FamilyKind { thm31, thm32 };

/// The two necessity families. thm31 uses f-hat_R(eta) = g(eta/R)/R on
/// [0, R/2]; thm32 modulates it to g((eta + R^b)/R)/R on [-R^b, -R^b + R/2].
/// Both are paired with the curve Gamma(x, t) = x - t^alpha.
struct CounterexampleFamily {
  FamilyKind kind = FamilyKind::thm31;
  double alpha = 0.5;
  double gamma = 1.0;
  double b = 1.0;  ///< thm32 only
  double c = 0.01;
  double R = 16.0;

  void validate() const;
  /// Frequency scale: R for thm31, R^b for thm32.
  double lambda() const;
  double support_lo() const;
  double support_hi() const;
  CurveSpec curve() const { return CurveSpec::holder_tangent(alpha); }
};

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& name);

/// Open interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return x > lo && x < hi; }
};

constexpr std::size_t kMinCounterexampleSamples = 64;

/// Node count used when the caller does not choose one.
std::size_t default_counterexample_samples(const CounterexampleFamily& fam);

/// Samples f-hat_R on its support; the canonical bump is the profile g.
SpectralFunction build_counterexample(const CounterexampleFamily& fam, std::size_t n_samples);

/// The set of x on which the family's witness time is defined.
Interval sets_AB(const CounterexampleFamily& fam);

/// Witness time t_x: x^{1/alpha} for thm31, the root of
/// x - t^alpha - 2 R^b t = 0 in (0, c R^{-2}) for thm32.
double selector_t(const CounterexampleFamily& fam, double x);

}  // namespace ctlab
