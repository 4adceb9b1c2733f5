#pragma once
// Independent oracles for the test suites. Nothing here calls the library's
// quadrature: integrals go through Boost's adaptive Gauss-Kronrod rule or a
// closed form.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ctlab/spectral.hpp"

namespace ctlab::testing {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// exp(-1/(u(1-u))) on (0, 1), written out again rather than borrowed.
inline double smooth_bump(double u) {
  if (!(u > 0.0 && u < 1.0)) return 0.0;
  return std::exp(4.0 - 1.0 / (u * (1.0 - u)));
}

/// f-hat as a sum of smooth bumps, each c_j b((xi - lo_j) / (hi_j - lo_j)).
struct BumpSum {
  struct Piece {
    double lo, hi;
    cplx coeff;
  };
  std::vector<Piece> pieces;

  cplx operator()(double xi) const {
    cplx v{};
    for (const auto& p : pieces) v += p.coeff * smooth_bump((xi - p.lo) / (p.hi - p.lo));
    return v;
  }
};

/// A random source with band lambda: 1 to 4 bumps inside lambda/2 < |xi| < 2 lambda.
inline BumpSum random_band_source(double lambda, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BumpSum s;
  const int count = 1 + static_cast<int>(rng() % 4);
  for (int j = 0; j < count; ++j) {
    const double a = 0.5 * lambda + u(rng) * 1.2 * lambda;
    const double b = std::min(a + (0.1 + 0.6 * u(rng)) * lambda, 2.0 * lambda);
    const double sign = u(rng) < 0.5 ? -1.0 : 1.0;
    const cplx c = std::polar(0.2 + u(rng), 2.0 * kPi * u(rng));
    if (sign > 0) s.pieces.push_back({a, b, c});
    else s.pieces.push_back({-b, -a, c});
  }
  return s;
}

inline SpectralFunction as_spectral(const BumpSum& s, double lambda, std::size_t n) {
  return SpectralFunction::from_profile(-2.0 * lambda, 2.0 * lambda, n, s, lambda);
}

/// (1/2pi) int e^{i(y xi + tau|xi|^m)} e^{-delta|xi|^m} g(xi) dxi over
/// [lo, hi], split so each Gauss-Kronrod panel sees a few radians of phase.
template <typename G>
cplx gk_synthesis(const G& g, double lo, double hi, double y, double tau, double delta, double m) {
  using boost::math::quadrature::gauss_kronrod;
  const double amax = std::max(std::abs(lo), std::abs(hi));
  const double rate = std::abs(y) + std::abs(tau) * m * std::pow(std::max(amax, 1.0), std::max(m - 1.0, 0.0)) +
                      (m < 1.0 ? std::abs(tau) * 10.0 : 0.0);
  const int panels = 1 + static_cast<int>((hi - lo) * rate / 4.0);
  auto integrand = [&](double xi, bool imag) {
    const double a = std::pow(std::abs(xi), m);
    const cplx v = g(xi) * std::exp(cplx(-delta * a, y * xi + tau * a));
    return imag ? v.imag() : v.real();
  };
  cplx sum{};
  for (int p = 0; p < panels; ++p) {
    const double a = lo + (hi - lo) * p / panels;
    const double b = lo + (hi - lo) * (p + 1) / panels;
    const double re = gauss_kronrod<double, 31>::integrate([&](double x) { return integrand(x, false); }, a, b, 8,
                                                           1e-11);
    const double im = gauss_kronrod<double, 31>::integrate([&](double x) { return integrand(x, true); }, a, b, 8,
                                                           1e-11);
    sum += cplx(re, im);
  }
  return sum / (2.0 * kPi);
}

inline cplx gk_synthesis(const BumpSum& s, double y, double tau, double delta, double m) {
  cplx v{};
  for (const auto& p : s.pieces) {
    BumpSum one{{p}};
    v += gk_synthesis(one, p.lo, p.hi, y, tau, delta, m);
  }
  return v;
}

/// (1/2pi) int |g|, the modulus bound every synthesis obeys.
inline double modulus_bound(const BumpSum& s) {
  using boost::math::quadrature::gauss_kronrod;
  double v = 0.0;
  for (const auto& p : s.pieces) {
    v += std::abs(p.coeff) *
         gauss_kronrod<double, 31>::integrate([](double u) { return smooth_bump(u); }, 0.0, 1.0, 12, 1e-14) *
         (p.hi - p.lo);
  }
  return v / (2.0 * kPi);
}

/// f-hat(xi) = exp(-xi^2 / 2), evolved with m = 2:
///   (1/2pi) int e^{-a xi^2 + i y xi} dxi = (1/2pi) sqrt(pi / a) exp(-y^2 / (4a)),
/// a = 1/2 + delta - i t, principal branch (Re a > 0).
inline cplx gaussian_evolution(double y, double t, double delta) {
  const cplx a(0.5 + delta, -t);
  return std::sqrt(kPi / a) * std::exp(-y * y / (4.0 * a)) / (2.0 * kPi);
}

/// The Gaussian sampled on [-L, L]; beyond |xi| = 12 it is below 1e-31.
inline SpectralFunction gaussian_source(std::size_t n = 2049, double L = 12.0) {
  return SpectralFunction::from_profile(-L, L, n, [](double xi) { return cplx(std::exp(-0.5 * xi * xi), 0.0); });
}

}  // namespace ctlab::testing
