#include "ctlab/bump.hpp"

#include <cmath>
#include <span>
#include <vector>

#include "ctlab/error.hpp"
#include "ctlab/summation.hpp"

namespace ctlab {

double canonical_bump_shape(double u) {
  if (!(u > 0.0 && u < 0.5)) return 0.0;
  return std::exp(-1.0 / (u * (0.5 - u)));
}

double canonical_bump_integral() {
  // Trapezoid is spectrally accurate for a C-infinity profile vanishing with
  // all derivatives at both ends.
  static const double value = [] {
    constexpr std::size_t intervals = 1 << 14;
    const double h = 0.5 / intervals;
    std::vector<double> terms(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k) {
      terms[k] = h * canonical_bump_shape(static_cast<double>(k) * h);
    }
    return cascade_sum(std::span<const double>(terms));
  }();
  return value;
}

Bump make_bump(const BumpSpec& spec) {
  if (!(spec.half_width > 0.0) || !std::isfinite(spec.half_width)) {
    throw SupportError("bump half_width must be positive");
  }
  const double lo = spec.center - spec.half_width;
  const double hi = spec.center + spec.half_width;
  constexpr double slack = 1e-15;
  if (lo < -slack || hi > 0.5 + slack) {
    throw SupportError("bump support [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "] leaves [0, 1/2]");
  }
  if (!(spec.normalization > 0.0)) {
    throw InvalidArgument("bump normalization must be positive");
  }
  // Integral over xi picks up the Jacobian 4 * half_width of the affine map.
  const double integral = 4.0 * spec.half_width * canonical_bump_integral();
  return Bump(spec.center, spec.half_width, spec.normalization / integral);
}

double Bump::operator()(double xi) const {
  const double u = 0.25 + (xi - center_) * (0.25 / half_width_);
  return scale_ * canonical_bump_shape(u);
}

}  // namespace ctlab
