#include "ctlab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ctlab/error.hpp"

namespace ctlab {

CurveSpec CurveSpec::identity() { return {CurveFamily::identity, 1.0, 1.0, 1.0, 0.0, nullptr}; }

CurveSpec CurveSpec::shear() { return {CurveFamily::shear, 1.0, 1.0, 1.0, 1.0, nullptr}; }

CurveSpec CurveSpec::holder_tangent(double alpha) {
  CurveSpec c{CurveFamily::holder_tangent, alpha, 1.0, 1.0, 1.0, nullptr};
  c.validate();
  return c;
}

CurveSpec CurveSpec::tabulated(CurveTable table, double alpha, double c1, double c2, double c3) {
  CurveSpec c{CurveFamily::tabulated, alpha, c1, c2, c3,
              std::make_shared<const CurveTable>(std::move(table))};
  c.validate();
  return c;
}

void CurveSpec::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("curve alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!(c1 > 0.0) || !(c2 >= c1) || !(c3 >= 0.0)) {
    throw InvalidArgument("curve constants need 0 < c1 <= c2 and c3 >= 0");
  }
  if (family != CurveFamily::tabulated) return;
  if (!table) throw InvalidArgument("tabulated curve without a table");
  const auto& tb = *table;
  const std::size_t nx = tb.x_nodes.size(), nt = tb.t_nodes.size();
  if (nx < 2 || nt < 2 || tb.values.size() != nx * nt) {
    throw InvalidArgument("curve table needs >= 2 nodes per axis and nx * nt values");
  }
  if (!std::is_sorted(tb.x_nodes.begin(), tb.x_nodes.end(), std::less_equal<>()) ||
      !std::is_sorted(tb.t_nodes.begin(), tb.t_nodes.end(), std::less_equal<>()) ||
      std::adjacent_find(tb.x_nodes.begin(), tb.x_nodes.end()) != tb.x_nodes.end() ||
      std::adjacent_find(tb.t_nodes.begin(), tb.t_nodes.end()) != tb.t_nodes.end()) {
    throw InvalidArgument("curve table nodes must be strictly increasing");
  }
  if (tb.t_nodes.front() != 0.0) throw InvalidArgument("curve table must start at t = 0");
  for (std::size_t i = 0; i < nx; ++i) {
    if (std::abs(tb.values[i * nt] - tb.x_nodes[i]) > 1e-12 * std::max(1.0, std::abs(tb.x_nodes[i]))) {
      throw InvalidArgument("curve table violates Gamma(x, 0) = x");
    }
  }
}

namespace {

// Index of the cell [nodes[k], nodes[k+1]] holding v, plus the local weight.
std::pair<std::size_t, double> locate(const std::vector<double>& nodes, double v) {
  auto it = std::upper_bound(nodes.begin(), nodes.end(), v);
  std::size_t k = (it == nodes.begin()) ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
  k = std::min(k, nodes.size() - 2);
  return {k, (v - nodes[k]) / (nodes[k + 1] - nodes[k])};
}

double eval_table(const CurveTable& tb, double x, double t) {
  if (x < tb.x_nodes.front() || x > tb.x_nodes.back() || t > tb.t_nodes.back()) {
    throw RangeError("tabulated curve queried outside its table at (" + std::to_string(x) +
                     ", " + std::to_string(t) + ")");
  }
  if (t == 0.0) return x;
  const std::size_t nt = tb.t_nodes.size();
  const auto [i, wx] = locate(tb.x_nodes, x);
  const auto [j, wt] = locate(tb.t_nodes, t);
  auto at = [&](std::size_t a, std::size_t b) { return tb.values[a * nt + b]; };
  const double lo = (1.0 - wx) * at(i, j) + wx * at(i + 1, j);
  const double hi = (1.0 - wx) * at(i, j + 1) + wx * at(i + 1, j + 1);
  return (1.0 - wt) * lo + wt * hi;
}

}  // namespace

double curve_eval(const CurveSpec& curve, double x, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw RangeError("curve time must lie in [0, 1], got " + std::to_string(t));
  }
  switch (curve.family) {
    case CurveFamily::identity:
      return x;
    case CurveFamily::shear:
      return x - t;
    case CurveFamily::holder_tangent:
      return t == 0.0 ? x : x - std::pow(t, curve.alpha);
    case CurveFamily::tabulated:
      return eval_table(*curve.table, x, t);
  }
  throw Error("unknown curve family");
}

RegularityReport verify_curve_regularity(const CurveSpec& curve, const Lattice& lattice) {
  if (lattice.nx < 2 || lattice.nt < 2) throw InvalidArgument("lattice needs >= 2 nodes per axis");
  auto axis = [](double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = (k + 1 == n) ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return v;
  };
  const auto xs = axis(lattice.x_min, lattice.x_max, lattice.nx);
  const auto ts = axis(lattice.t_min, lattice.t_max, lattice.nt);

  std::vector<double> g(xs.size() * ts.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ts.size(); ++j) g[i * ts.size() + j] = curve_eval(curve, xs[i], ts[j]);
  }
  auto at = [&](std::size_t i, std::size_t j) { return g[i * ts.size() + j]; };

  RegularityReport r;
  r.c1 = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ts.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t k = i + 1; k < xs.size(); ++k) {
        const double q = std::abs(at(i, j) - at(k, j)) / std::abs(xs[i] - xs[k]);
        r.c1 = std::min(r.c1, q);
        r.c2 = std::max(r.c2, q);
      }
    }
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      for (std::size_t k = j + 1; k < ts.size(); ++k) {
        const double q = std::abs(at(i, j) - at(i, k)) / std::pow(std::abs(ts[j] - ts[k]), curve.alpha);
        r.c3 = std::max(r.c3, q);
      }
    }
  }
  constexpr double rel = 1e-12;
  r.bilipschitz_ok = r.c1 >= curve.c1 * (1.0 - rel) && r.c2 <= curve.c2 * (1.0 + rel);
  r.holder_ok = r.c3 <= curve.c3 * (1.0 + rel) + 1e-15;
  return r;
}

}  // namespace ctlab
