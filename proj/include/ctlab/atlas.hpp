#pragma once

#include <string>
#include <vector>

#include "ctlab/counterexample.hpp"
#include "ctlab/rational.hpp"

namespace ctlab {

enum class TheoremId { T1, T2, T3, T4_1, T4_2, T4_3, T4_4, T4_5, T4_6, T4_7 };

std::string to_string(TheoremId id);

template <typename T>
struct BasicExponentQuery {
  T alpha;
  T gamma;
  T m;
};

template <typename T>
struct BasicExponentResult {
  T s;
  TheoremId theorem;
  std::string regime;  ///< interval of gamma holding this piece, e.g. "[2/3, 1)"
  /// Convergence at s = s(gamma) itself is not settled either way.
  bool endpoint_open = true;
};

using ExponentQuery = BasicExponentQuery<double>;
using ExponentResult = BasicExponentResult<double>;
using ExactQuery = BasicExponentQuery<Rational>;
using ExactResult = BasicExponentResult<Rational>;

/// The theorem whose (m, alpha) hypotheses contain the query. m = 2 routes to
/// T1 to T3; every other m to the fractional family.
TheoremId route(double alpha, double m);
TheoremId route(const Rational& alpha, const Rational& m);

/// Sharp exponent s(alpha, gamma, m) with its theorem and gamma regime.
ExponentResult exponent(const ExponentQuery& q);
ExactResult exponent(const ExactQuery& q);

/// A theorem's formula evaluated at (alpha, gamma, m) without checking that
/// its hypotheses hold. Used to compare neighbouring theorems.
double theorem_value(TheoremId id, double alpha, double gamma, double m);
Rational theorem_value(TheoremId id, const Rational& alpha, const Rational& gamma, const Rational& m);

template <typename T>
struct BasicBreakpoint {
  T gamma;
  T left;   ///< the piece ending at gamma, evaluated at gamma
  T right;  ///< the piece starting at gamma, evaluated at gamma
};

using Breakpoint = BasicBreakpoint<double>;
using ExactBreakpoint = BasicBreakpoint<Rational>;

/// Regime boundaries in gamma for the theorem routed from (alpha, m), ascending.
std::vector<Breakpoint> breakpoints(double alpha, double m);
std::vector<ExactBreakpoint> breakpoints(const Rational& alpha, const Rational& m);

struct ContinuityEntry {
  double boundary = 0.0;
  double left = 0.0;
  double right = 0.0;
  double gap = 0.0;
};

/// exponent() at b (1 - 1e-9) and b (1 + 1e-9) for every breakpoint b.
std::vector<ContinuityEntry> continuity_check(double alpha, double m);

/// Growth exponent of Q(R) in R that the family realizes.
double predicted_Q_slope(const CounterexampleFamily& fam);

}  // namespace ctlab
