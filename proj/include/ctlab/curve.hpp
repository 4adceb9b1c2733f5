#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace ctlab {

enum class CurveFamily { identity, shear, holder_tangent, tabulated };

/// Gamma(x, t) sampled on a rectangular (x, t) table, bilinear in between.
struct CurveTable {
  std::vector<double> x_nodes;  ///< strictly increasing
  std::vector<double> t_nodes;  ///< strictly increasing, first node 0
  std::vector<double> values;   ///< row-major: values[ix * t_nodes.size() + it]
};

/// A curve family Gamma(x, t) with Holder exponent alpha in t and declared
/// regularity constants:
///   c1 |x - x'| <= |Gamma(x,t) - Gamma(x',t)| <= c2 |x - x'|
///   |Gamma(x,t) - Gamma(x,t')| <= c3 |t - t'|^alpha
struct CurveSpec {
  CurveFamily family = CurveFamily::identity;
  double alpha = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 0.0;
  std::shared_ptr<const CurveTable> table;

  static CurveSpec identity();
  /// Gamma(x, t) = x - t.
  static CurveSpec shear();
  /// Gamma(x, t) = x - t^alpha.
  static CurveSpec holder_tangent(double alpha);
  static CurveSpec tabulated(CurveTable table, double alpha, double c1, double c2, double c3);

  void validate() const;
};

/// Gamma(x, t) for t in [0, 1]; Gamma(x, 0) == x exactly for every family.
double curve_eval(const CurveSpec& curve, double x, double t);

struct Lattice {
  std::size_t nx = 41;
  std::size_t nt = 41;
  double x_min = -1.0;
  double x_max = 1.0;
  double t_min = 0.0;
  double t_max = 1.0;
};

struct RegularityReport {
  double c1 = 0.0;  ///< tightest empirical lower Lipschitz constant in x
  double c2 = 0.0;  ///< tightest empirical upper Lipschitz constant in x
  double c3 = 0.0;  ///< tightest empirical Holder constant in t
  bool bilipschitz_ok = false;
  bool holder_ok = false;
};

/// Scans all lattice pairs; failures are reported, not raised.
RegularityReport verify_curve_regularity(const CurveSpec& curve, const Lattice& lattice);

}  // namespace ctlab
