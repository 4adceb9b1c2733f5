#include "ctlab/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "ctlab/error.hpp"

namespace ctlab {

namespace {

template <typename T>
T num(std::int64_t p, std::int64_t q = 1);
template <>
double num<double>(std::int64_t p, std::int64_t q) {
  return static_cast<double>(p) / static_cast<double>(q);
}
template <>
Rational num<Rational>(std::int64_t p, std::int64_t q) {
  return Rational(p, q);
}

template <typename T>
T pos(const T& x) {
  return std::max(x, num<T>(0));
}

std::string show(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}
std::string show(const Rational& v) { return v.str(); }

template <typename T>
struct Piece {
  T lower;  // first piece has lower 0, open
  std::function<T(const T&)> value;
};

template <typename T>
void check_query(const T& a, const T& g, const T& m) {
  const T zero = num<T>(0), one = num<T>(1);
  if (!(a > zero && a <= one)) throw InvalidArgument("alpha must lie in (0, 1]");
  if (!(g > zero)) throw InvalidArgument("gamma must be positive");
  if (!(m > zero)) throw InvalidArgument("m must be positive");
}

template <typename T>
TheoremId route_impl(const T& a, const T& m) {
  const T half = num<T>(1, 2), one = num<T>(1), two = num<T>(2);
  if (m == two) {
    if (a >= half) return TheoremId::T1;
    if (a <= num<T>(1, 4)) return TheoremId::T2;
    return TheoremId::T3;
  }
  if (m < one) return a <= half ? TheoremId::T4_1 : TheoremId::T4_2;
  if (m == one) return TheoremId::T4_3;
  if (a <= half / m) return TheoremId::T4_4;
  if (a >= one / m) return TheoremId::T4_7;
  if (a < half) return TheoremId::T4_5;
  if (m < two) return TheoremId::T4_6;
  throw UncoveredHypothesisError("no theorem covers alpha = " + show(a) + ", m = " + show(m));
}

// Each theorem as consecutive gamma pieces. The boundaries are where the
// displayed min / positive-part structure switches branch.
template <typename T>
std::vector<Piece<T>> pieces(TheoremId id, const T& a, const T& m) {
  const T zero = num<T>(0), one = num<T>(1), two = num<T>(2), half = num<T>(1, 2), quarter = num<T>(1, 4);
  const auto constant = [](T v) { return [v](const T&) { return v; }; };
  const auto schrodinger = [=](const T& g) { return half * (one - one / g); };
  const auto frac_cap = [=](const T& g) { return m / num<T>(4) * (one - one / g); };
  const auto tangential = [=](const T& g) { return half - a / g; };
  const auto damped = [=](const T& g) { return half * (one - m * a / g); };
  const auto mixed = [=](const T& g) { return (two - m) / num<T>(4) + m * (one - two * a) / (num<T>(4) * g); };
  switch (id) {
    case TheoremId::T1:
      return {{zero, constant(zero)}, {one, schrodinger}, {two, constant(quarter)}};
    case TheoremId::T2:
      return {{zero, constant(zero)}, {two * a, tangential}, {one, constant(half - a)}};
    case TheoremId::T3:
      return {{zero, constant(zero)},
              {two * a, tangential},
              {one, constant(half - a)},
              {one / (two * a), schrodinger},
              {two, constant(quarter)}};
    case TheoremId::T4_1:
    case TheoremId::T4_4:
      return {{zero, constant(zero)}, {m * a, damped}, {one, constant(half * (one - m * a))}};
    case TheoremId::T4_2:
      return {{zero, constant(zero)}, {m * a, damped}, {one, mixed}};
    case TheoremId::T4_3:
      return {{zero, constant(zero)}, {a, [=](const T& g) { return half * (one - a / g); }}};
    case TheoremId::T4_5:
      return {{zero, constant(zero)},
              {m * a, damped},
              {one, constant((one - m * a) / two)},
              {m / (m - two + two * m * a), frac_cap},
              {m / (m - one), constant(quarter)}};
    case TheoremId::T4_6:
      return {{zero, constant(zero)},
              {m * a, damped},
              {one, mixed},
              {m * (one - a) / (m - one), frac_cap},
              {m / (m - one), constant(quarter)}};
    case TheoremId::T4_7:
      return {{zero, constant(zero)}, {one, frac_cap}, {m / (m - one), constant(quarter)}};
  }
  throw UncoveredHypothesisError("unknown theorem");
}

// The formula exactly as the theorem displays it. Theorems stated piecewise
// are evaluated from their pieces.
template <typename T>
T displayed(TheoremId id, const T& a, const T& g, const T& m) {
  const T one = num<T>(1), half = num<T>(1, 2), quarter = num<T>(1, 4);
  switch (id) {
    case TheoremId::T1:
      return std::min(half * pos(one - one / g), quarter);
    case TheoremId::T2:
      return std::min(pos(half - a / g), half - a);
    case TheoremId::T4_1:
    case TheoremId::T4_4:
      return std::min(half * (one - m * a), half * pos(one - m * a / g));
    case TheoremId::T4_3:
      return half * pos(one - a / g);
    case TheoremId::T4_7:
      return std::min(quarter, m / num<T>(4) * pos(one - one / g));
    // T4.2's min goes negative below gamma = m alpha, where the theorem's
    // range starts; its pieces carry the (.)^+ that the display leaves implicit.
    case TheoremId::T3:
    case TheoremId::T4_2:
    case TheoremId::T4_5:
    case TheoremId::T4_6: {
      const auto ps = pieces(id, a, m);
      std::size_t k = 0;
      while (k + 1 < ps.size() && g >= ps[k + 1].lower) ++k;
      return ps[k].value(g);
    }
  }
  throw UncoveredHypothesisError("unknown theorem");
}

template <typename T>
BasicExponentResult<T> exponent_impl(const BasicExponentQuery<T>& q) {
  check_query(q.alpha, q.gamma, q.m);
  const TheoremId id = route_impl(q.alpha, q.m);
  const auto ps = pieces(id, q.alpha, q.m);
  std::size_t k = 0;
  while (k + 1 < ps.size() && q.gamma >= ps[k + 1].lower) ++k;
  std::string regime = k == 0 ? "(0, " : "[" + show(ps[k].lower) + ", ";
  regime += k + 1 < ps.size() ? show(ps[k + 1].lower) + ")" : "inf)";
  return {displayed(id, q.alpha, q.gamma, q.m), id, regime, true};
}

template <typename T>
std::vector<BasicBreakpoint<T>> breakpoints_impl(const T& a, const T& m) {
  check_query(a, num<T>(1), m);
  const auto ps = pieces(route_impl(a, m), a, m);
  std::vector<BasicBreakpoint<T>> out;
  for (std::size_t k = 1; k < ps.size(); ++k) {
    out.push_back({ps[k].lower, ps[k - 1].value(ps[k].lower), ps[k].value(ps[k].lower)});
  }
  return out;
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1: return "T1";
    case TheoremId::T2: return "T2";
    case TheoremId::T3: return "T3";
    case TheoremId::T4_1: return "T4.1";
    case TheoremId::T4_2: return "T4.2";
    case TheoremId::T4_3: return "T4.3";
    case TheoremId::T4_4: return "T4.4";
    case TheoremId::T4_5: return "T4.5";
    case TheoremId::T4_6: return "T4.6";
    case TheoremId::T4_7: return "T4.7";
  }
  return "?";
}

TheoremId route(double alpha, double m) {
  check_query(alpha, 1.0, m);
  return route_impl(alpha, m);
}

TheoremId route(const Rational& alpha, const Rational& m) {
  check_query(alpha, Rational(1), m);
  return route_impl(alpha, m);
}

ExponentResult exponent(const ExponentQuery& q) { return exponent_impl(q); }
ExactResult exponent(const ExactQuery& q) { return exponent_impl(q); }

double theorem_value(TheoremId id, double alpha, double gamma, double m) {
  check_query(alpha, gamma, m);
  return displayed(id, alpha, gamma, m);
}

Rational theorem_value(TheoremId id, const Rational& alpha, const Rational& gamma, const Rational& m) {
  check_query(alpha, gamma, m);
  return displayed(id, alpha, gamma, m);
}

std::vector<Breakpoint> breakpoints(double alpha, double m) { return breakpoints_impl(alpha, m); }
std::vector<ExactBreakpoint> breakpoints(const Rational& alpha, const Rational& m) {
  return breakpoints_impl(alpha, m);
}

std::vector<ContinuityEntry> continuity_check(double alpha, double m) {
  // A relative offset: an absolute 1e-9 would step over boundaries like
  // m alpha when that product is itself below 1e-9.
  constexpr double off = 1e-9;
  std::vector<ContinuityEntry> out;
  for (const Breakpoint& b : breakpoints(alpha, m)) {
    const double l = exponent(ExponentQuery{alpha, b.gamma * (1.0 - off), m}).s;
    const double r = exponent(ExponentQuery{alpha, b.gamma * (1.0 + off), m}).s;
    out.push_back({b.gamma, l, r, std::abs(l - r)});
  }
  return out;
}

double predicted_Q_slope(const CounterexampleFamily& fam) {
  sets_AB(fam);  // raises RegimeError outside the theorem hypotheses
  if (fam.kind == FamilyKind::thm31) {
    return fam.gamma < 1.0 ? std::max(0.5 - fam.alpha / fam.gamma, 0.0) : std::max(0.5 - fam.alpha, 0.0);
  }
  return fam.gamma < 2.0 ? 0.5 * (fam.gamma - 1.0) : 0.5;
}

}  // namespace ctlab
