#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ctlab/atlas.hpp"
#include "ctlab/bump.hpp"
#include "ctlab/counterexample.hpp"
#include "ctlab/curve.hpp"
#include "ctlab/error.hpp"
#include "ctlab/evolve.hpp"
#include "ctlab/kernel.hpp"
#include "ctlab/maximal.hpp"
#include "ctlab/run.hpp"
#include "support.hpp"

namespace ctlab::testing {

namespace {

using boost::math::quadrature::gauss_kronrod;

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

PropertyResult result(const char* module, const char* name, bool pass, std::string detail) {
  return {module, name, pass, std::move(detail)};
}

// L2 norm of h_t from a slice whose window holds all of its mass.
double slice_norm(const SpectralFunction& f, const EvolutionParams& p, double t) {
  const auto probe = PropagationPlan::for_window(f, p, -1.0, 1.0);
  const double spread = t * p.m * std::pow(f.max_abs_support(), p.m - 1.0) + 1.0;
  const auto plan = PropagationPlan::for_window(f, p, probe.footprint_lo() - spread, probe.footprint_hi() + spread);
  const SampledField s = propagate_slice(plan, t);
  double sum = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) sum += std::norm(s.value(j));
  return std::sqrt(sum * s.spacing());
}

CounterexampleFamily family(FamilyKind kind, double alpha, double gamma, double b, double R) {
  CounterexampleFamily f;
  f.kind = kind;
  f.alpha = alpha;
  f.gamma = gamma;
  f.b = b;
  f.R = R;
  return f;
}

}  // namespace

std::vector<PropertyResult> domain_properties() {
  std::vector<PropertyResult> out;

  {
    CurveTable table;
    for (int i = 0; i <= 20; ++i) table.x_nodes.push_back(-1.0 + 0.1 * i);
    for (int j = 0; j <= 10; ++j) table.t_nodes.push_back(0.1 * j);
    for (double x : table.x_nodes)
      for (double t : table.t_nodes) table.values.push_back(x - std::sqrt(t));
    const std::vector<CurveSpec> curves{CurveSpec::identity(), CurveSpec::shear(), CurveSpec::holder_tangent(0.1),
                                        CurveSpec::holder_tangent(0.5), CurveSpec::holder_tangent(1.0),
                                        CurveSpec::tabulated(table, 0.5, 1.0, 1.0, 1.0)};
    bool ok = true;
    for (const auto& c : curves)
      for (int i = 0; i <= 40; ++i) {
        const double x = -1.0 + 0.05 * i;
        ok = ok && curve_eval(c, x, 0.0) == x;
      }
    out.push_back(result("domain", "Gamma(x, 0) = x exactly for every family", ok, "6 curves, 41 lattice x"));
  }
  {
    bool ok = true;
    double worst_c3 = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double alpha = 0.05 * k;
      const RegularityReport r = verify_curve_regularity(CurveSpec::holder_tangent(alpha), Lattice{});
      ok = ok && r.bilipschitz_ok && r.holder_ok && std::abs(r.c1 - 1.0) < 1e-12 && std::abs(r.c2 - 1.0) < 1e-12 &&
           r.c3 <= 1.0 + 1e-12;
      worst_c3 = std::max(worst_c3, r.c3);
    }
    out.push_back(result("domain", "holder_tangent regular with C1 = C2 = 1, C3 <= 1", ok,
                         fmt("alpha = 0.05..1, largest empirical C3 %.6g", worst_c3)));
  }
  {
    double worst = 0.0;
    for (const auto& base : {family(FamilyKind::thm31, 0.25, 0.75, 1.0, 16), family(FamilyKind::thm32, 0.5, 3, 2, 16)})
      for (double R : {16.0, 64.0}) {
        auto a = base, b = base;
        a.R = R;
        b.R = 4 * R;
        const double ratio = sobolev_norm(build_counterexample(a, default_counterexample_samples(a)), 0) /
                             sobolev_norm(build_counterexample(b, default_counterexample_samples(b)), 0);
        worst = std::max(worst, std::abs(ratio - 2.0));
      }
    out.push_back(result("domain", "||f_R|| / ||f_4R|| = 2", worst <= 1e-6, fmt("max deviation %.3g", worst)));
  }
  {
    double worst = 0.0;
    for (const auto& base : {family(FamilyKind::thm32, 1.0 / 3, 1.6, 1.6, 16), family(FamilyKind::thm32, 0.5, 3, 2, 16)})
      for (double R : {16.0, 32.0, 64.0}) {
        auto fam = base;
        fam.R = R;
        const Interval A = sets_AB(fam);
        for (int i = 1; i <= 200; ++i) {
          const double x = A.lo + A.width() * i / 201.0;
          const double t = selector_t(fam, x);
          const double res = std::abs(x - std::pow(t, fam.alpha) - 2.0 * std::pow(R, fam.b) * t);
          worst = std::max(worst, res / std::max(x, 1.0 / (R * R)));
        }
      }
    out.push_back(result("domain", "thm32 selector residual <= 1e-12 max(x, R^-2)", worst <= 1e-12,
                         fmt("max scaled residual %.3g", worst)));
  }
  {
    const auto f = SpectralFunction::from_profile(-6.0, 6.0, 1201, [](double xi) {
      return cplx(smooth_bump((std::abs(xi) - 1.0) / 5.0), 0.0);
    });
    bool ok = true;
    double prev = 0.0;
    for (int k = 0; k <= 20; ++k) {
      const double v = sobolev_norm(f, 0.1 * k);
      ok = ok && v >= prev;
      prev = v;
    }
    out.push_back(result("domain", "sobolev_norm nondecreasing in s for |xi| >= 1", ok, "s = 0..2 step 0.1"));
  }
  {
    double worst = 0.0;
    for (const BumpSpec& spec : {BumpSpec{}, BumpSpec{0.2, 0.1, 1.0}, BumpSpec{0.4, 0.05, 1.0}}) {
      const Bump g = make_bump(spec);
      const double integral =
          gauss_kronrod<double, 61>::integrate([&](double x) { return g(x); }, g.lower(), g.upper(), 15, 1e-15);
      worst = std::max(worst, std::abs(integral - 1.0));
    }
    out.push_back(result("domain", "bump integral = 1", worst <= 1e-10, fmt("max error %.3g (Gauss-Kronrod)", worst)));
  }
  return out;
}

std::vector<PropertyResult> evolve_properties() {
  std::vector<PropertyResult> out;
  std::mt19937_64 rng(20261018);
  const std::vector<CurveSpec> curves{CurveSpec::identity(), CurveSpec::shear(), CurveSpec::holder_tangent(0.5)};

  {
    double worst = 0.0;
    std::vector<double> xs;
    for (int i = 0; i <= 63; ++i) xs.push_back(-1.0 + 2.0 * i / 63.0);
    for (int k = 0; k < 5; ++k) {
      const BumpSum s = random_band_source(32.0, rng);
      const auto f = as_spectral(s, 32.0, 513);
      const double scale = modulus_bound(s);
      for (const auto& c : curves) {
        const auto plan = PropagationPlan::for_curve(f, {2.0, 1.0, true}, c);
        const auto vals = evaluate_along_curve(plan, c, xs, 0.0);
        for (std::size_t i = 0; i < xs.size(); ++i)
          worst = std::max(worst, std::abs(vals[i] - gk_synthesis(s, xs[i], 0, 0, 2)) / scale);
      }
    }
    out.push_back(result("evolve", "identity at t = 0", worst <= 1e-8, fmt("max relative error %.3g", worst)));
  }
  {
    double worst = 0.0;
    const auto g = gaussian_source();
    for (double t : {0.0, 0.01, 0.1, 0.5, 1.0}) {
      const double delta = t;  // gamma = 1
      const double want = std::sqrt(std::sqrt(kPi / (1.0 + 2.0 * delta)) / (2.0 * kPi));
      worst = std::max(worst, std::abs(slice_norm(g, {2.0, 1.0, true}, t) - want) / want);
    }
    const BumpSum s{{{4.5, 12.0, cplx(1.0, 0.5)}, {-14.0, -5.0, cplx(-0.3, 0.8)}}};
    const auto f = as_spectral(s, 8.0, 1025);
    for (double t : {0.0, 0.001, 0.01, 0.05}) {
      const EvolutionParams p{2.0, 1.5, true};
      const double delta = p.damping_at(t);
      double sq = 0.0;
      for (const auto& piece : s.pieces) {
        sq += gauss_kronrod<double, 61>::integrate(
            [&](double xi) { return std::norm(s(xi)) * std::exp(-2.0 * delta * xi * xi); }, piece.lo, piece.hi, 15,
            1e-15);
      }
      const double want = std::sqrt(sq / (2.0 * kPi));
      worst = std::max(worst, std::abs(slice_norm(f, p, t) - want) / want);
    }
    out.push_back(result("evolve", "Plancherel damping identity", worst <= 1e-8, fmt("max relative error %.3g", worst)));
  }
  {
    double worst = 0.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double lambda : {16.0, 32.0, 64.0, 128.0}) {
      const BumpSum s = random_band_source(lambda, rng);
      const auto f = as_spectral(s, lambda, 8 * static_cast<std::size_t>(lambda) + 1);
      const double scale = modulus_bound(s);
      const EvolutionParams p{2.0, 1.0, true};
      const CurveSpec c = CurveSpec::holder_tangent(0.5);
      const auto plan = PropagationPlan::for_curve(f, p, c);
      for (int k = 0; k < 100; ++k) {
        const double x = -1.0 + 2.0 * u(rng);
        const double t = std::pow(u(rng), 3.0);
        const cplx a = evaluate_along_curve(plan, c, x, t, EvalMethod::transform);
        const cplx b = direct_quadrature(f, p, curve_eval(c, x, t), t);
        worst = std::max(worst, std::abs(a - b) / scale);
      }
    }
    out.push_back(result("evolve", "transform path agrees with direct quadrature", worst <= 1e-6,
                         fmt("lambda 16..128, 100 draws each, max relative error %.3g", worst)));
  }
  {
    bool ok = true;
    const BumpSum s{{{4.5, 12.0, cplx(1.0, 0.5)}}};
    const auto f = as_spectral(s, 8.0, 1025);
    for (double t : {0.01, 0.1, 0.5}) {
      ok = ok && slice_norm(f, {2.0, 1.0, true}, t) <= slice_norm(f, {2.0, 1.0, false}, t);
    }
    out.push_back(result("evolve", "damping never increases the norm", ok, "t = 0.01, 0.1, 0.5"));
  }
  {
    // For real f the reflected conjugate spectrum is f-hat itself, so |h_t|
    // must not move. For complex f it is h_{-t} conjugated, which is checked
    // against the backward synthesis.
    double worst = 0.0;
    const EvolutionParams free{2.0, 1.0, false};
    const BumpSum s = random_band_source(16.0, rng);
    BumpSum real = s;
    for (const auto& p : s.pieces) real.pieces.push_back({-p.hi, -p.lo, std::conj(p.coeff)});
    BumpSum reflected;
    for (const auto& p : s.pieces) reflected.pieces.push_back({-p.hi, -p.lo, std::conj(p.coeff)});
    // Plain samples on both sides, so refinement interpolates the same way.
    const auto fp = as_spectral(real, 16.0, 257);
    const auto fr = SpectralFunction::from_samples(fp.xi_min(), fp.xi_max(),
                                                   std::vector<cplx>(fp.samples().begin(), fp.samples().end()), 16.0);
    const auto fs = as_spectral(s, 16.0, 257);
    const auto fc = as_spectral(reflected, 16.0, 257);
    std::vector<cplx> rev(fr.samples().rbegin(), fr.samples().rend());
    for (auto& v : rev) v = std::conj(v);
    const auto fr2 = SpectralFunction::from_samples(-fr.xi_max(), -fr.xi_min(), rev, 16.0);
    const double scale = modulus_bound(real);
    for (double t : {0.0, 0.05, 0.3}) {
      for (double y : {-0.7, 0.0, 0.4}) {
        worst = std::max(worst, std::abs(std::abs(direct_quadrature(fr, free, y, t)) -
                                         std::abs(direct_quadrature(fr2, free, y, t))) /
                                    scale);
        worst = std::max(worst, std::abs(std::abs(direct_quadrature(fc, free, y, t)) -
                                         std::abs(oscillatory_synthesis(fs, y, -t, 0.0, 2.0))) /
                                    scale);
      }
    }
    out.push_back(result("evolve", "|h_t| under conjugate reflection of f-hat", worst <= 1e-10,
                         fmt("max relative difference %.3g", worst)));
  }
  return out;
}

std::vector<PropertyResult> maximal_properties() {
  std::vector<PropertyResult> out;
  {
    const auto fam = family(FamilyKind::thm31, 0.25, 0.75, 1.0, 32);
    const auto f = build_counterexample(fam, default_counterexample_samples(fam));
    const auto xs = default_x_nodes(32, sets_AB(fam));
    const EvolutionParams p = family_params(fam);
    bool ok = true;
    std::vector<double> prev;
    double prev_norm = 0.0;
    for (int q : {1, 2, 4, 8}) {
      const auto grid = build_time_grid({-16, q}, &fam, xs);
      const auto field = maximal_field(f, p, fam.curve(), xs, grid);
      if (!prev.empty())
        for (std::size_t i = 0; i < xs.size(); ++i) ok = ok && field.values[i] >= prev[i];
      const double n = l2_norm_field(field);
      ok = ok && n >= prev_norm;
      prev = field.values;
      prev_norm = n;
    }
    out.push_back(result("maximal", "refining the time grid never lowers M or its norm", ok,
                         "steps per octave 1, 2, 4, 8"));
  }
  {
    bool ok = true;
    std::size_t checked = 0;
    for (const auto& fam : {family(FamilyKind::thm31, 0.25, 0.75, 1.0, 64), family(FamilyKind::thm32, 0.5, 3, 2, 32)}) {
      const auto f = build_counterexample(fam, default_counterexample_samples(fam));
      const Interval A = sets_AB(fam);
      const auto xs = default_x_nodes(fam.R, A);
      const auto grid = build_time_grid({default_t_min_exponent(fam.lambda(), fam.alpha), 8}, &fam, xs);
      const auto field = maximal_field(f, family_params(fam), fam.curve(), xs, grid);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!A.contains(xs[i])) continue;
        const double tx = selector_t(fam, xs[i]);
        const double w = std::abs(direct_quadrature(f, family_params(fam), curve_eval(fam.curve(), xs[i], tx), tx));
        ok = ok && field.values[i] >= w;
        ++checked;
      }
    }
    out.push_back(result("maximal", "M(x) >= |P f_R(Gamma(x, t_x), t_x)| on A", ok,
                         std::to_string(checked) + " nodes, exact comparison"));
  }
  {
    bool ok = true;
    std::ostringstream d;
    const std::vector<double> Rs{16, 32, 64, 128, 256};
    for (const auto& fam0 : {family(FamilyKind::thm31, 0.25, 0.75, 1, 16), family(FamilyKind::thm31, 0.25, 2, 1, 16),
                             family(FamilyKind::thm32, 1.0 / 3, 1.6, 1.6, 16), family(FamilyKind::thm32, 0.5, 3, 2, 16)}) {
      std::vector<double> qs;
      for (double R : Rs) {
        auto fam = fam0;
        fam.R = R;
        qs.push_back(ratio_Q(fam, 0.0).Q);
      }
      const double slope = fit_slope_guarded(Rs, qs).slope;
      const double pred = predicted_Q_slope(fam0);
      ok = ok && slope <= pred + 0.1;
      d << fmt("%.3f<=%.3f ", slope, pred + 0.1);
    }
    out.push_back(result("maximal", "fitted Q slope never exceeds the prediction by more than 0.1", ok, d.str()));
  }
  {
    const auto fam = family(FamilyKind::thm32, 1.0 / 3, 1.6, 1.6, 32);
    const char* old = std::getenv("CTLAB_THREADS");
    const std::string saved = old ? old : "";
    ::setenv("CTLAB_THREADS", "1", 1);
    const QResult a = ratio_Q(fam, 0.0);
    ::setenv("CTLAB_THREADS", "7", 1);
    const QResult b = ratio_Q(fam, 0.0);
    const QResult c = ratio_Q(fam, 0.0);
    if (old) ::setenv("CTLAB_THREADS", saved.c_str(), 1);
    else ::unsetenv("CTLAB_THREADS");
    const bool ok = a.Q == b.Q && b.Q == c.Q && a.norm_maxfield == c.norm_maxfield;
    out.push_back(result("maximal", "bit-identical Q across repeats and thread counts", ok, fmt("Q = %.17g", a.Q)));
  }
  return out;
}

std::vector<PropertyResult> kernel_properties() {
  std::vector<PropertyResult> out;
  const CutoffSpec cut;
  const double psi_int = cutoff_integral(cut);
  const CurveSpec curve = CurveSpec::holder_tangent(0.5);
  const EvolutionParams p{2.0, 2.0, true};
  {
    double worst = 0.0, worst_sym = 0.0;
    for (double lambda : {16.0, 64.0}) {
      const auto psi = cutoff_spectrum(cut, lambda);
      for (const KernelDraw& d : draw_kernel_samples(lambda, 300, 7)) {
        const cplx k = kernel_eval(d.x, d.y, d.t1, d.t2, psi, p, curve);
        const cplx ks = kernel_eval(d.y, d.x, d.t2, d.t1, psi, p, curve);
        worst = std::max(worst, std::abs(k) / (lambda * psi_int));
        worst_sym = std::max(worst_sym, std::abs(k - std::conj(ks)) / (lambda * psi_int));
      }
    }
    out.push_back(result("kernel", "|K| <= lambda int Psi", worst <= 1.0 + 1e-12, fmt("max |K| / (lambda int Psi) = %.6g", worst)));
    out.push_back(result("kernel", "K(x, y, t1, t2) = conj K(y, x, t2, t1)", worst_sym <= 1e-10,
                         fmt("max relative difference %.3g", worst_sym)));
  }
  {
    bool ok = true;
    double worst = 0.0;
    const CurveSpec id = CurveSpec::identity();
    // Two integrations by parts: |int Psi e^{i u xi}| <= u^-2 int |Psi''|.
    // A constant read off |K| at one distance is not an envelope, since the
    // transform of Psi oscillates. Psi'' by central differences.
    const double h = 1e-4;
    const auto second = [&](double xi) {
      return std::abs(cutoff_value(cut, xi + h) - 2.0 * cutoff_value(cut, xi) + cutoff_value(cut, xi - h)) / (h * h);
    };
    const double c_int = 2.0 * gauss_kronrod<double, 61>::integrate(second, 0.5, 2.0, 15, 1e-9);
    for (double lambda : {16.0, 64.0}) {
      const auto psi = cutoff_spectrum(cut, lambda);
      for (int k = 0; k <= 200; ++k) {
        const double ld = 32.0 + k * (2.0 * lambda - 32.0) / 200.0;
        const double v = std::abs(kernel_eval(ld / lambda, 0.0, 0, 0, psi, p, id));
        const double cap = lambda * c_int / (ld * ld);
        ok = ok && v <= cap * (1.0 + 1e-6);
        worst = std::max(worst, v / cap);
      }
    }
    out.push_back(result("kernel", "non-stationary decay |K| <= lambda (lambda d)^-2 C_int", ok,
                         fmt("max |K| / cap = %.3g", worst)));
  }
  {
    const KernelReport r = verify_kernel_bound({0.5, 2.0, {16.0, 64.0, 256.0}, 200, 3, cut});
    out.push_back(result("kernel", "max kernel ratio does not grow past 2x", r.non_growth,
                         fmt("first %.4g, last %.4g", r.levels.front().max_ratio, r.levels.back().max_ratio)));
  }
  {
    bool ok = true;
    std::ostringstream d;
    const std::vector<std::pair<double, double>> rows{{0.75, 0.5}, {0.75, 1.5}, {0.75, 3},  {0.2, 0.3},
                                                      {0.2, 0.6},  {0.2, 2},    {0.4, 0.5}, {0.4, 0.9},
                                                      {0.4, 1.1},  {0.4, 1.5},  {0.4, 3}};
    std::vector<double> lambdas;
    for (int e = 16; e <= 64; e += 8) lambdas.push_back(std::ldexp(1.0, e));
    for (auto [a, g] : rows) {
      const double slope = majorant_slope(a, g, lambdas).slope;
      const double pred = beta_table(a, g).predicted_I_exponent;
      // Rows below gamma = 2 alpha carry the no-loss exponent 0, which the
      // integrated majorant undercuts; there only the upper side is checked.
      ok = ok && slope <= pred + 0.05 && (pred == 0.0 || slope >= pred - 0.05);
      d << fmt("(%.2g,", a) << fmt("%.2g):", g) << fmt("%.3f/", slope) << fmt("%.3f ", pred);
    }
    out.push_back(result("kernel", "integrated bound reproduces every table I-exponent", ok, d.str()));
  }
  return out;
}

std::vector<PropertyResult> atlas_properties() {
  std::vector<PropertyResult> out;
  std::vector<double> alphas, ms;
  for (int i = 0; i < 50; ++i) {
    alphas.push_back(std::pow(10.0, -3.0 + 3.0 * i / 49.0));
    ms.push_back(4.0 * std::pow(10.0, -3.0 + 3.0 * i / 49.0));
  }
  {
    bool ok = true;
    for (double a : alphas)
      for (double m : ms) {
        try {
          for (double g : {0.01, 0.7, 1.3, 5.0}) (void)exponent(ExponentQuery{a, g, m});
        } catch (const UncoveredHypothesisError&) {
          ok = false;
        }
      }
    out.push_back(result("atlas", "every (alpha, m) is covered by a theorem", ok, "50 x 50 log grid"));
  }
  {
    double worst = 0.0;
    for (double a : alphas)
      for (double m : ms)
        for (const auto& e : continuity_check(a, m)) worst = std::max(worst, e.gap);
    out.push_back(result("atlas", "continuous across breakpoints", worst <= 1e-7, fmt("max gap %.3g", worst)));
  }
  {
    bool ok = true;
    for (double a : alphas)
      for (double m : ms) {
        double prev = -1.0;
        for (int k = 0; k <= 200; ++k) {
          const double s = exponent(ExponentQuery{a, std::pow(10.0, -3.0 + 6.0 * k / 200.0), m}).s;
          ok = ok && s >= prev - 1e-15;
          prev = s;
        }
      }
    out.push_back(result("atlas", "s nondecreasing in gamma", ok, "gamma 1e-3..1e3, 201 points"));
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (double a : alphas)
      for (double m : ms) {
        const TheoremId id = route(a, m);
        double cap = 0.25;
        switch (id) {
          case TheoremId::T2: cap = 0.5 - a; break;
          case TheoremId::T4_1:
          case TheoremId::T4_4: cap = 0.5 * (1.0 - m * a); break;
          case TheoremId::T4_2: cap = (2.0 - m) / 4.0; break;
          case TheoremId::T4_3: cap = 0.5; break;
          default: break;
        }
        const double hi = exponent(ExponentQuery{a, 1e12, m}).s;
        const double lo = exponent(ExponentQuery{a, 1e-12, m}).s;
        worst = std::max({worst, std::abs(hi - cap), lo});
        ok = ok && std::abs(hi - cap) <= 1e-9 && lo == 0.0;
      }
    out.push_back(result("atlas", "limits: cap as gamma -> inf, 0 as gamma -> 0", ok, fmt("max deviation %.3g", worst)));
  }
  {
    double worst = 0.0;
    for (double a : alphas) {
      if (a > 0.25) continue;
      for (int k = 0; k <= 100; ++k) {
        const double g = std::pow(10.0, -2.0 + 4.0 * k / 100.0);
        const double t2 = theorem_value(TheoremId::T2, a, g, 2.0);
        worst = std::max({worst, std::abs(theorem_value(TheoremId::T4_4, a, g, 2.0) - t2),
                          std::abs(theorem_value(TheoremId::T4_4, a, g, 2.0 - 1e-12) - t2)});
      }
    }
    out.push_back(result("atlas", "T4.4 at m = 2 agrees with T2", worst <= 1e-9, fmt("max difference %.3g", worst)));
  }
  return out;
}

std::vector<PropertyResult> cli_properties() {
  std::vector<PropertyResult> out;
  using nlohmann::json;
  const std::vector<json> docs{
      {{"command", "atlas"}, {"alpha", "1/3"}, {"gammas", {"1/2", "2/3", 1, "3/2", 2, 4}}, {"continuity", true}},
      {{"command", "sweep"}, {"family", "thm31"}, {"alpha", "1/4"}, {"gamma", "3/4"}, {"scales", {16, 32, 64, 128}}},
      {{"command", "lowerbound"}, {"family", "thm31"}, {"alpha", "1/4"}, {"gamma", "3/4"}, {"R", 32}, {"calibrate", true}},
      {{"command", "kernelcheck"}, {"alpha", "1/2"}, {"gamma", 2}, {"scales", {16, 32, 64, 128}}, {"count", 100}},
      {{"command", "eval"}, {"R", 16}, {"x", {0, 0.25}}, {"t", {0, 0.01}}},
  };
  const std::map<std::string, std::vector<std::string>> schema{
      {"atlas", {"alpha", "gamma", "m", "s", "theorem", "regime"}},
      {"sweep", {"family", "alpha", "gamma", "m", "b", "c", "s_order", "R", "lambda", "Q", "norm_maxfield",
                 "norm_f_l2", "norm_f_hs", "slope", "predicted_slope", "verdict"}},
      {"lowerbound", {"family", "alpha", "gamma", "b", "c", "R", "n_nodes", "min_value", "bound", "verdict"}},
      {"kernelcheck", {"lambda", "max_ratio", "schur_slope", "predicted_I_exponent", "verdict"}},
      {"eval", {"x", "t", "gamma_xt", "re", "im", "abs", "method"}},
  };
  bool round_trip = true, schema_ok = true, exit_ok = true;
  std::ostringstream d;
  for (const json& doc : docs) {
    const RunRecord a = run(RunConfig::from_json(doc));
    json ja = a.to_json();
    const RunRecord b = run(RunConfig::from_json(ja["config"]));
    json jb = b.to_json();
    ja.erase("wall_time");
    jb.erase("wall_time");
    if (ja.dump() != jb.dump() || a.to_csv() != b.to_csv()) {
      round_trip = false;
      d << doc["command"].get<std::string>() << " differs; ";
    }
    const auto& cols = schema.at(a.config.command);
    schema_ok = schema_ok && a.columns == cols;
    for (const auto& row : a.rows) schema_ok = schema_ok && row.size() == cols.size();
    for (const char* key : {"artifact_version", "command", "config", "columns", "rows", "verdicts", "errors", "extra",
                            "ok", "wall_time"})
      schema_ok = schema_ok && a.to_json().contains(key);
    for (const auto& v : a.to_json()["verdicts"])
      schema_ok = schema_ok && v["measured"].is_number() && v["predicted"].is_number() && v["pass"].is_boolean();
    exit_ok = exit_ok && ((a.exit_code() == kExitOk) == (a.ok() && a.errors.empty()));
  }
  RunRecord failing;
  failing.verdicts.push_back({"x", 1.0, 0.0, 0.1, false});
  exit_ok = exit_ok && failing.exit_code() == kExitVerdict;
  failing.errors.push_back("boom");
  exit_ok = exit_ok && failing.exit_code() == kExitInternal;
  try {
    RunConfig::from_json({{"command", "atlas"}, {"alpha", 0}}).validate();
    exit_ok = false;
  } catch (const ConfigError& e) {
    exit_ok = exit_ok && std::string(e.what()).find("alpha") != std::string::npos;
  }
  out.push_back(result("cli", "config echo reproduces the record bit for bit", round_trip, d.str()));
  out.push_back(result("cli", "fixed column sets and record fields", schema_ok, "all five commands"));
  out.push_back(result("cli", "exit 0 exactly when verdicts pass without errors", exit_ok, "codes 0, 1, 2, 3"));
  return out;
}

std::vector<PropertyResult> all_properties() {
  std::vector<PropertyResult> out;
  for (auto group : {domain_properties, evolve_properties, maximal_properties, kernel_properties, atlas_properties,
                     cli_properties}) {
    auto g = group();
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

}  // namespace ctlab::testing
