#include "ctlab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctlab/bump.hpp"
#include "ctlab/error.hpp"

namespace ctlab {

namespace {

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

enum class Regime { thm31_fast_damping, thm31_slow_damping, thm32_matched, thm32_capped };

Regime regime_of(const CounterexampleFamily& f) {
  if (f.kind == FamilyKind::thm31) {
    return f.gamma < 1.0 ? Regime::thm31_fast_damping : Regime::thm31_slow_damping;
  }
  if (!(f.alpha > 0.25) || f.gamma < 1.0) {
    throw RegimeError("modulated family needs alpha in (1/4, 1] and gamma >= 1");
  }
  const double lo = std::max(1.0 / (2.0 * f.alpha), 1.0);
  if (f.gamma >= lo && f.gamma < 2.0 && same(f.b, f.gamma)) return Regime::thm32_matched;
  if (f.gamma >= 2.0 && same(f.b, 2.0)) return Regime::thm32_capped;
  throw RegimeError("modulated family with gamma = " + std::to_string(f.gamma) + ", b = " +
                    std::to_string(f.b) +
                    " is outside both regimes (b = gamma in [max(1/(2 alpha), 1), 2), or b = 2 with gamma >= 2)");
}

}  // namespace

void CounterexampleFamily::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be positive");
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("c must lie in (0, 1)");
  if (!(R >= 2.0) || !std::isfinite(R)) throw InvalidArgument("R must be >= 2");
  if (kind == FamilyKind::thm32 && !(b >= 1.0 && std::isfinite(b))) {
    throw InvalidArgument("modulation exponent b must be >= 1");
  }
}

double CounterexampleFamily::lambda() const {
  return kind == FamilyKind::thm31 ? R : std::pow(R, b);
}

double CounterexampleFamily::support_lo() const {
  return kind == FamilyKind::thm31 ? 0.0 : -lambda();
}

double CounterexampleFamily::support_hi() const { return support_lo() + 0.5 * R; }

std::string to_string(FamilyKind kind) { return kind == FamilyKind::thm31 ? "thm31" : "thm32"; }

FamilyKind family_kind_from_string(const std::string& name) {
  if (name == "thm31") return FamilyKind::thm31;
  if (name == "thm32") return FamilyKind::thm32;
  throw InvalidArgument("unknown family '" + name + "' (expected thm31 or thm32)");
}

std::size_t default_counterexample_samples(const CounterexampleFamily&) {
  // The profile is attached, so the node count only sets the coarse grid;
  // consumers refine from the profile as needed.
  return 1025;
}

SpectralFunction build_counterexample(const CounterexampleFamily& fam, std::size_t n_samples) {
  fam.validate();
  if (n_samples < kMinCounterexampleSamples) {
    throw ResolutionError("counterexample needs >= " + std::to_string(kMinCounterexampleSamples) +
                          " samples across its support, got " + std::to_string(n_samples));
  }
  const Bump g = make_bump({});
  const double R = fam.R;
  const double shift = fam.kind == FamilyKind::thm31 ? 0.0 : fam.lambda();
  SpectralProfile profile = [g, R, shift](double eta) { return cplx(g((eta + shift) / R) / R, 0.0); };
  return SpectralFunction::from_profile(fam.support_lo(), fam.support_hi(), n_samples, std::move(profile));
}

Interval sets_AB(const CounterexampleFamily& fam) {
  fam.validate();
  const double a = fam.alpha, c = fam.c, R = fam.R;
  switch (regime_of(fam)) {
    case Regime::thm31_fast_damping:
      return {0.0, c * std::pow(R, -2.0 * a / fam.gamma)};
    case Regime::thm31_slow_damping:
      return {0.0, c * std::pow(R, -2.0 * a)};
    case Regime::thm32_matched:
      return {0.0, std::pow(c, a) * std::pow(R, -2.0 * a) + 2.0 * c * std::pow(R, fam.gamma - 2.0)};
    case Regime::thm32_capped:
      return {0.0, std::pow(c, a) * std::pow(R, -2.0 * a) + 2.0 * c};
  }
  throw Error("unreachable regime");
}

double selector_t(const CounterexampleFamily& fam, double x) {
  const Interval set = sets_AB(fam);
  if (!set.contains(x)) {
    throw DomainError("x = " + std::to_string(x) + " lies outside (" + std::to_string(set.lo) + ", " +
                      std::to_string(set.hi) + ")");
  }
  if (fam.kind == FamilyKind::thm31) return std::pow(x, 1.0 / fam.alpha);

  const double slope = 2.0 * fam.lambda();
  auto F = [&](double t) { return x - std::pow(t, fam.alpha) - slope * t; };
  double lo = 0.0;
  double hi = fam.c / (fam.R * fam.R);
  if (F(hi) > 0.0) {
    throw RootNotBracketedError("no witness time in (0, c R^-2) for x = " + std::to_string(x));
  }
  // Bisect down to adjacent doubles. This is tighter than 1e-15 R^-2 and keeps
  // the residual small even when t_x is far below that tolerance.
  for (int it = 0; it < 2200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (F(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::abs(F(lo)) <= std::abs(F(hi)) ? lo : hi;
}

}  // namespace ctlab
