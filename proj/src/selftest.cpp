#include "conjlab/selftest.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>

#include "conjlab/circle.hpp"
#include "conjlab/conjugate.hpp"
#include "conjlab/distribution.hpp"
#include "conjlab/errors.hpp"
#include "conjlab/poisson.hpp"
#include "conjlab/series.hpp"
#include "conjlab/strip.hpp"
#include "conjlab/testing.hpp"

namespace conjlab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

struct Checker {
  SelftestResult& result;
  void operator()(bool ok, const std::string& name, const std::string& detail) {
    if (ok) {
      result.passed.push_back(name);
    } else {
      result.failed.push_back(name + ": " + detail);
    }
  }
};

SelftestResult run_suite(const std::string& module,
                         const std::function<void(Checker&)>& body) {
  SelftestResult r{module, {}, {}};
  Checker check{r};
  try {
    body(check);
  } catch (const std::exception& e) {
    r.failed.push_back(std::string("unexpected exception: ") + e.what());
  }
  return r;
}

}  // namespace

SelftestResult selftest_circle() {
  return run_suite("circle_fn", [](Checker& check) {
    // rho has essential range {-1, +1} on every proper arc set.
    for (const ArcSet& e :
         {ArcSet({{0.0, kPi}}), ArcSet({{0.2, 0.3}}), ArcSet({{1.0, 2.0}, {4.0, 5.5}})}) {
      const double gap = essential_range_gap(rho(e));
      check(std::abs(gap - 2.0) <= 1e-15, "rho range gap = 2", "gap = " + fmt(gap));
    }

    // Sampling commutes with scaling node by node.
    {
      const StepSymbol f({0.0, 1.0, 2.5, kTwoPi}, {0.5, -2.0, 1.0});
      const CircleGrid grid(64, 0.5);
      const SampledFn a = sample(scale_symbol(2.5, f), grid);
      const SampledFn b = sample(f, grid);
      double worst = 0.0;
      for (std::size_t j = 0; j < grid.size(); ++j)
        worst = std::max(worst, std::abs(a.values[j] - 2.5 * b.values[j]));
      check(worst <= 1e-15, "sample commutes with scaling", "worst = " + fmt(worst));
    }

    // Rotation preserves measure.
    {
      const ArcSet e({{0.5, 1.5}, {3.0, 6.0}});
      double worst = 0.0;
      for (double phi : {0.3, 2.0, 5.9})
        worst = std::max(worst, std::abs(e.rotated(phi).measure() - e.measure()));
      check(worst <= 1e-12, "rotation preserves arc measure", "worst = " + fmt(worst));
    }

    // Symbols bounded below by pi/2 composed with rho keep a gap >= pi.
    {
      const StepSymbol f({0.0, 2.0, kTwoPi}, {0.5 * kPi, 2.0});
      for (const ArcSet& e : {ArcSet({{0.0, kPi}}), ArcSet({{1.0, 1.5}})}) {
        const double gap = essential_range_gap(scale_symbol(f, rho(e)));
        check(gap >= kPi, "gap >= pi after rho composition", "gap = " + fmt(gap));
      }
    }
  });
}

SelftestResult selftest_conjugator() {
  return run_suite("conjugator", [](Checker& check) {
    std::mt19937 rng(20260814);

    // Anti-involution on mean-zero polynomials.
    {
      double worst = 0.0;
      for (int rep = 0; rep < 5; ++rep) {
        const TrigPoly f = random_real_trigpoly(rng, 32, true);
        const TrigPoly ff = conjugate_multiplier(conjugate_multiplier(f));
        for (int n = -32; n <= 32; ++n)
          worst = std::max(worst, std::abs(ff.coeff(n) + f.coeff(n)));
      }
      check(worst <= 1e-15, "anti-involution on mean-zero input",
            "worst = " + fmt(worst));
    }

    // Linearity across all three methods.
    {
      const TrigPoly f = random_real_trigpoly(rng, 24);
      const TrigPoly g = random_real_trigpoly(rng, 24);
      const double a = 1.75, b = -0.4;
      TrigPoly combo = TrigPoly::zero(24);
      for (int n = -24; n <= 24; ++n)
        combo.set_coeff(n, a * f.coeff(n) + b * g.coeff(n));
      const CircleGrid grid(256, 0.5);
      const SampledFn sf = sample(f, grid), sg = sample(g, grid),
                      sc = sample(combo, grid);
      const std::vector<double> cf = conjugate_grid(sf), cg = conjugate_grid(sg),
                                cc = conjugate_grid(sc);
      double worst = 0.0;
      for (std::size_t j = 0; j < grid.size(); ++j)
        worst = std::max(worst, std::abs(cc[j] - (a * cf[j] + b * cg[j])));
      const double t = 1.2345;
      const double pv_combo = conjugate_pv(sc, t);
      const double pv_parts = a * conjugate_pv(sf, t) + b * conjugate_pv(sg, t);
      worst = std::max(worst, std::abs(pv_combo - pv_parts));
      const TrigPoly mc = conjugate_multiplier(combo);
      for (int n = -24; n <= 24; ++n)
        worst = std::max(worst,
                         std::abs(mc.coeff(n) - (a * conjugate_multiplier(f).coeff(n) +
                                                 b * conjugate_multiplier(g).coeff(n))));
      check(worst <= 1e-9, "linearity (multiplier, fft, pv)", "worst = " + fmt(worst));
    }

    // Mean-zero output.
    {
      const TrigPoly f = random_real_trigpoly(rng, 40);
      const CircleGrid grid(512, 0.25);
      const std::vector<double> cf = conjugate_grid(sample(f, grid));
      double mean = 0.0;
      for (double v : cf) mean += v;
      mean /= static_cast<double>(cf.size());
      check(std::abs(conjugate_multiplier(f).coeff(0)) == 0.0 &&
                std::abs(mean) <= 1e-12,
            "mean-zero output", "grid mean = " + fmt(mean));
    }

    // Cross-method agreement, n = 4096, degree <= 64.
    {
      double worst = 0.0;
      const CircleGrid grid(4096, 0.5);
      for (int rep = 0; rep < 3; ++rep) {
        const TrigPoly f = random_real_trigpoly(rng, 64);
        const TrigPoly fc = conjugate_multiplier(f);
        const SampledFn sf = sample(f, grid);
        const std::vector<double> pv = conjugate_pv_midpoints(sf);
        const std::vector<double> mids = midpoint_angles(grid);
        for (std::size_t i = 0; i < mids.size(); ++i)
          worst = std::max(worst, std::abs(pv[i] - fc.eval_real(mids[i])));
      }
      check(worst <= 1e-5, "pv vs multiplier within 1e-5 on n=4096",
            "worst = " + fmt(worst));
    }

    // PV vs closed form for a step symbol away from breakpoints, n = 8192.
    {
      const StepSymbol f = scale_symbol(0.5 * kPi, rho(ArcSet({{0.0, kPi}})));
      const CircleGrid grid(8192, 0.5);
      const SampledFn sf = sample(f, grid);
      const std::vector<double> pv = conjugate_pv_midpoints(sf);
      const std::vector<double> mids = midpoint_angles(grid);
      double worst = 0.0;
      for (std::size_t i = 0; i < mids.size(); ++i) {
        const double t = mids[i];
        if (circle_distance(t, 0.0) < 0.1 || circle_distance(t, kPi) < 0.1) continue;
        worst = std::max(worst, std::abs(pv[i] - conjugate_step_exact(f, t)));
      }
      check(worst <= 1e-3, "pv vs closed form within 1e-3 off breakpoints",
            "worst = " + fmt(worst));
    }

    // Rotation equivariance through the closed form.
    {
      const ArcSet e({{0.7, 2.1}});
      const double phi = 1.234;
      const StepSymbol f = rho(e), fr = rho(e.rotated(phi));
      double worst = 0.0;
      for (double t : {0.1, 1.0, 3.3, 5.0})
        worst = std::max(worst, std::abs(conjugate_step_exact(fr, t + phi) -
                                         conjugate_step_exact(f, t)));
      check(worst <= 1e-12, "rotation equivariance", "worst = " + fmt(worst));
    }
  });
}

SelftestResult selftest_poisson() {
  return run_suite("poisson_herglotz", [](Checker& check) {
    std::mt19937 rng(7);
    const StepSymbol step({0.0, 1.0, 4.0, kTwoPi}, {2.0, -1.0, 0.5});

    // Mean-value property at an interior point.
    {
      const DiskPoint z0(0.3, 1.1);
      const double u0 = poisson_extend(step, z0);
      double avg = 0.0;
      const int m = 256;
      for (int j = 0; j < m; ++j) {
        const double ang = kTwoPi * (j + 0.5) / m;
        avg += poisson_extend(step, DiskPoint(z0.z + 0.05 * std::polar(1.0, ang)));
      }
      avg /= m;
      check(std::abs(avg - u0) <= 1e-9, "mean-value property",
            "|avg - u| = " + fmt(std::abs(avg - u0)));
    }

    // Harmonic extension bounded by the sup norm.
    {
      double worst = -1.0;
      std::uniform_real_distribution<double> ur(0.0, 0.95), ut(0.0, kTwoPi);
      for (int k = 0; k < 200; ++k) {
        const double u = poisson_extend(step, DiskPoint(ur(rng), ut(rng)));
        worst = std::max(worst, std::abs(u) - step.sup_norm());
      }
      check(worst < 0.0, "|Re X_f| < sup|f|", "excess = " + fmt(worst));
    }

    // Maximum near the outer sampled radius.
    {
      const TrigPoly f = random_real_trigpoly(rng, 12);
      double inner = 0.0, outer = 0.0;
      for (int j = 0; j < 128; ++j) {
        const double ang = kTwoPi * j / 128.0;
        for (double rad : {0.2, 0.5})
          inner = std::max(inner, std::abs(poisson_extend(f, DiskPoint(rad, ang))));
        outer = std::max(outer, std::abs(poisson_extend(f, DiskPoint(0.8, ang))));
      }
      check(outer >= inner - 1e-12, "maximum principle (outer ring dominates)",
            "inner = " + fmt(inner) + ", outer = " + fmt(outer));
    }

    // Hardy means nondecreasing in r.
    {
      const StepSymbol f = scale_symbol(0.5 * kPi, rho(ArcSet({{0.0, kPi}})));
      const HardyGrowthCurve curve =
          hardy_growth(f, 2.0, {0.0, 0.2, 0.5, 0.8, 0.95, 0.999});
      bool mono = true;
      for (std::size_t i = 1; i < curve.means.size(); ++i)
        if (curve.means[i] < curve.means[i - 1] * (1.0 - 1e-9)) mono = false;
      check(mono, "hardy means nondecreasing", "means not monotone");
    }

    // Outer function times its reciprocal is 1; negating the symbol
    // gives the reciprocal directly.
    {
      double worst = 0.0;
      std::uniform_real_distribution<double> ur(0.0, 0.9), ut(0.0, kTwoPi);
      for (int k = 0; k < 50; ++k) {
        const DiskPoint z(ur(rng), ut(rng));
        const std::complex<double> prod =
            outer_eval(step, z, 1) * outer_eval(step, z, -1);
        worst = std::max(worst, std::abs(prod - 1.0));
        const std::complex<double> neg = outer_eval(scale_symbol(-1.0, step), z, 1);
        worst = std::max(worst, std::abs(neg - outer_eval(step, z, -1)));
      }
      check(worst <= 1e-10, "outer(f) * outer(f)^-1 = 1", "worst = " + fmt(worst));
    }
  });
}

SelftestResult selftest_strip() {
  return run_suite("strip_harmonic", [](Checker& check) {
    const std::vector<StripPoint> pts = {
        {0.0, 0.0}, {0.7, 1.5}, {-1.2, 3.0}, {0.3, 6.5}, {1.5, -2.0}};
    const std::vector<double> lambdas = {0.0, 1.0, 5.0};

    {
      bool ok = true;
      double bad = 0.0;
      for (double lam : lambdas)
        for (const StripPoint& p : pts) {
          const double g = g_lambda(p, lam);
          if (!(g > 0.0 && g < 1.0)) { ok = false; bad = g; }
        }
      check(ok, "0 < g < 1", "g = " + fmt(bad));
    }

    // Discrete Laplacian decays like h^2.
    {
      bool ok = true;
      std::string detail;
      for (const StripPoint& p : {StripPoint{0.4, 2.0}, StripPoint{-0.8, 2.6}}) {
        const double lam = 1.0;
        auto lap = [&](double h) {
          return (g_lambda({p.x + h, p.y}, lam) + g_lambda({p.x - h, p.y}, lam) +
                  g_lambda({p.x, p.y + h}, lam) + g_lambda({p.x, p.y - h}, lam) -
                  4.0 * g_lambda(p, lam)) /
                 (h * h);
        };
        const double ratio = std::abs(lap(1e-2)) / std::abs(lap(1e-3));
        if (!(ratio > 30.0 && ratio < 300.0)) {
          ok = false;
          detail = "ratio = " + fmt(ratio);
        }
      }
      check(ok, "5-point Laplacian decays as h^2", detail);
    }

    {
      double worst = 0.0;
      for (double lam : lambdas)
        for (const StripPoint& p : pts)
          worst = std::max(worst,
                           std::abs(g_lambda(p, lam) - g_lambda({-p.x, p.y}, lam)));
      check(worst <= 1e-15, "symmetry in x", "worst = " + fmt(worst));
    }

    {
      bool ok = true;
      for (double lam : lambdas)
        for (double x : {0.0, 1.0}) {
          double prev = -1.0;
          for (double y = -4.0; y <= lam + 6.0; y += 0.5) {
            const double g = g_lambda({x, y}, lam);
            if (!(g > prev)) ok = false;
            prev = g;
          }
        }
      check(ok, "strictly increasing in y", "monotonicity violated");
    }

    {
      bool ok = true;
      double slack = 1.0;
      for (double lam : lambdas)
        for (const StripPoint& p : pts) {
          if (!(lam + 2.0 - p.y >= 1.0)) continue;
          const double g = g_lambda(p, lam);
          const double lb = g_lambda_lower_bound(p, lam);
          slack = std::min(slack, g - lb);
          if (g < lb) ok = false;
        }
      check(ok, "exponential lower bound", "slack = " + fmt(slack));
    }
  });
}

SelftestResult selftest_series() {
  return run_suite("slow_series", [](Checker& check) {
    // Refining tol moves the value by less than the original tail bound.
    {
      bool ok = true;
      std::string detail;
      for (double x : {1e-2, 1e-3}) {
        const SeriesValue coarse = loglog_cos_series(x, 1e-4);
        const SeriesValue fine = loglog_cos_series(x, 1e-5);
        const double move = std::abs(coarse.value - fine.value);
        if (!(move < coarse.tail_bound)) {
          ok = false;
          detail = "x = " + fmt(x) + ": moved " + fmt(move) + " vs bound " +
                   fmt(coarse.tail_bound);
        }
      }
      check(ok, "tail bound honored under refinement", detail);
    }

    // Weak asymptotic lower bound in the cusp.
    {
      bool ok = true;
      std::string detail;
      for (double x : {1e-4, 5e-4}) {
        const double s = loglog_cos_series(x, 0.5).value;
        const double lb = 0.5 * std::log(std::log(1.0 / x));
        if (!(s >= lb)) {
          ok = false;
          detail = "x = " + fmt(x) + ": series " + fmt(s) + " < " + fmt(lb);
        }
      }
      check(ok, "series >= 0.5 loglog(1/x)", detail);
    }

    // Bounded part of the jump symbol never exceeds pi/2.
    {
      const JumpSymbolSpec spec{};
      double worst = -1.0;
      for (double t = 0.05; t < kTwoPi; t += 0.037) {
        if (circle_distance(t, spec.t0) <= 1e-9) continue;
        const double f = jump_symbol(spec, t, 1e-6);
        const double h = 2.0 * loglog_sin_series(t - spec.t0, 1e-6).value;
        worst = std::max(worst, std::abs(f - h) - 0.5 * kPi);
      }
      check(worst <= 1e-12, "jump symbol bounded by pi/2 plus its series part",
            "excess = " + fmt(worst));
    }

    // Decomposition is stable against re-assembly on an independent grid.
    {
      const JumpSymbolSpec spec{};
      double worst = 0.0;
      for (double t : {spec.t0 + 0.07, spec.t0 - 0.31, 1.0}) {
        const double direct = jump_conjugate(spec, t, 1e-4);
        const std::size_t n = 1u << 15;
        const double h = kTwoPi / static_cast<double>(n);
        double offset = t / h - 0.5;
        offset -= std::floor(offset);
        const CircleGrid grid(n, offset >= 1.0 ? 0.0 : offset);
        SampledFn taper{grid, std::vector<double>(n)};
        for (std::size_t j = 0; j < n; ++j)
          taper.values[j] = jump_taper_part(spec, grid.node(j));
        const double rebuilt =
            conjugate_pv(taper, t) +
            conjugate_step_exact(jump_step_symbol(spec), t) -
            2.0 * loglog_cos_series(circle_distance(t, spec.t0), 1e-5).value;
        worst = std::max(worst, std::abs(direct - rebuilt));
      }
      check(worst <= 1e-2, "conjugate decomposition grid-independent",
            "worst = " + fmt(worst));
    }
  });
}

SelftestResult selftest_distribution() {
  return run_suite("distribution", [](Checker& check) {
    const ArcSet half({{0.0, kPi}});
    const StepSymbol f_half_pi = scale_symbol(0.5 * kPi, rho(half));

    // Monotone curve with measures inside [0, 2 pi].
    {
      const GradedGrid mesh({0.0, kPi}, 20);
      const std::vector<double> raw = conjugate_step_exact(f_half_pi, mesh.nodes());
      std::vector<double> vals(raw.size());
      for (std::size_t i = 0; i < raw.size(); ++i) vals[i] = std::abs(raw[i]);
      const DistributionCurve curve =
          distribution_curve(vals, mesh.weights(), default_lambda_grid());
      bool ok = true;
      for (std::size_t i = 0; i < curve.measures.size(); ++i) {
        // full-mass and near-equal sums carry fp noise of order 1e-13
        if (curve.measures[i] < 0.0 || curve.measures[i] > kTwoPi + 1e-9)
          ok = false;
        if (i > 0 && curve.measures[i] > curve.measures[i - 1] + 1e-12) ok = false;
      }
      check(ok, "distribution curve monotone in [0, 2pi]", "violated");
    }

    // Layer cake of a two-valued exponential matches the closed form.
    {
      const StepSymbol chi = indicator(half);
      const CircleGrid grid(4096, 0.5);
      const SampledFn s = sample(chi, grid);
      std::vector<double> expv(s.values.size());
      for (std::size_t i = 0; i < expv.size(); ++i) expv[i] = std::exp(s.values[i]);
      const std::vector<double> w(expv.size(),
                                  kTwoPi / static_cast<double>(expv.size()));
      const double got = layer_cake(expv, w).value;
      const double exact = kPi * std::exp(1.0) + kPi;
      check(std::abs(got - exact) / exact <= 1e-3,
            "two-valued layer cake matches pi e + pi",
            "got " + fmt(got) + " vs " + fmt(exact));
    }

    // Decay rate at most 1.1 for symbols >= pi/2 in modulus.
    {
      bool ok = true;
      std::string detail;
      struct Case {
        StepSymbol f;
        ArcSet e;
      };
      const std::vector<Case> cases = {
          {StepSymbol::constant(0.5 * kPi), half},
          {StepSymbol::constant(2.0), ArcSet({{1.0, 4.0}})},
      };
      for (const Case& c : cases) {
        const Evidence ev = gather_evidence(scale_symbol(c.f, rho(c.e)));
        if (!(ev.fit.n_points > 0 && ev.fit.alpha <= 1.1)) {
          ok = false;
          detail = "alpha = " + fmt(ev.fit.alpha);
        }
      }
      check(ok, "fitted alpha <= 1.1 for |f| >= pi/2", detail);
    }

    // Refinement growth of the divergent exp integral: the contract asks
    // for a factor 1.5 per 10 depth levels at depths 30 and 40.
    {
      std::vector<double> integrals;
      for (int depth : {20, 30, 40}) {
        const GradedGrid mesh({0.0, kPi}, depth);
        const std::vector<double> conj =
            conjugate_step_exact(f_half_pi, mesh.nodes());
        std::vector<double> expv(conj.size());
        for (std::size_t i = 0; i < expv.size(); ++i) expv[i] = std::exp(conj[i]);
        integrals.push_back(layer_cake(expv, mesh.weights()).value);
      }
      const double r30 = integrals[1] / integrals[0];
      const double r40 = integrals[2] / integrals[1];
      check(r30 >= 1.5, "depth-30 exp integral >= 1.5 x depth-20",
            "ratio = " + fmt(r30) +
                " (log-divergent integrals grow additively, not geometrically, "
                "at these depths)");
      check(r40 >= 1.5, "depth-40 exp integral >= 1.5 x depth-30",
            "ratio = " + fmt(r40) +
                " (log-divergent integrals grow additively, not geometrically, "
                "at these depths)");
    }

    // Zygmund upper bound strict for every tested arc set.
    {
      std::vector<double> lams;
      for (double l = 0.0; l <= 6.0; l += 0.5) lams.push_back(l);
      bool ok = true;
      for (const ArcSet& e :
           {half, ArcSet({{0.0, 0.1}}), ArcSet({{1.0, 2.0}, {4.0, 5.0}})}) {
        if (!zygmund_upper_check(e, lams).all_below) ok = false;
      }
      check(ok, "zygmund upper bound all strict", "some measured >= bound");
    }
  });
}

std::vector<SelftestResult> selftest_all() {
  return {selftest_circle(),  selftest_conjugator(), selftest_poisson(),
          selftest_strip(),   selftest_series(),     selftest_distribution()};
}

std::vector<SelftestResult> run_selftests(const std::string& module_name) {
  if (module_name.empty()) return selftest_all();
  std::vector<SelftestResult> out;
  using Fn = std::function<SelftestResult()>;
  const std::vector<std::pair<std::string, Fn>> table = {
      {"circle_fn", selftest_circle},
      {"conjugator", selftest_conjugator},
      {"poisson_herglotz", selftest_poisson},
      {"strip_harmonic", selftest_strip},
      {"slow_series", selftest_series},
      {"distribution", selftest_distribution}};
  for (const auto& [name, fn] : table)
    if (name == module_name) out.push_back(fn());
  if (out.empty()) throw ConfigError("unknown selftest module: " + module_name);
  return out;
}

}  // namespace conjlab
