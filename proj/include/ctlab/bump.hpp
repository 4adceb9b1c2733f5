#pragma once

namespace ctlab {

/// Placement of a smooth compactly supported profile inside [0, 1/2].
struct BumpSpec {
  double center = 0.25;
  double half_width = 0.25;
  double normalization = 1.0;  ///< target value of the integral
};

/// C-infinity bump g(xi) = Z exp(-1/(u(1/2-u))) where u is xi mapped affinely
/// from [center - half_width, center + half_width] onto [0, 1/2]. The
/// canonical spec (center 1/4, half width 1/4) gives the profile on [0, 1/2]
/// directly.
class Bump {
 public:
  double operator()(double xi) const;

  double lower() const { return center_ - half_width_; }
  double upper() const { return center_ + half_width_; }
  double center() const { return center_; }
  double half_width() const { return half_width_; }
  /// Z, fixed so that the integral equals the requested normalization.
  double scale() const { return scale_; }

 private:
  friend Bump make_bump(const BumpSpec& spec);
  Bump(double center, double half_width, double scale)
      : center_(center), half_width_(half_width), scale_(scale) {}

  double center_;
  double half_width_;
  double scale_;
};

/// Builds the profile; throws SupportError if the support leaves [0, 1/2].
Bump make_bump(const BumpSpec& spec);

/// Unnormalized exp(-1/(u(1/2-u))) on (0, 1/2), zero elsewhere.
double canonical_bump_shape(double u);

/// Integral of canonical_bump_shape over [0, 1/2].
double canonical_bump_integral();

}  // namespace ctlab
