#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "conjlab/circle.hpp"
#include "conjlab/conjugate.hpp"
#include "conjlab/distribution.hpp"
#include "conjlab/errors.hpp"
#include "conjlab/series.hpp"

using namespace conjlab;

namespace {

std::vector<double> uniform_weights(std::size_t n) {
  return std::vector<double>(n, kTwoPi / static_cast<double>(n));
}

DistributionCurve synthetic_curve(double c, double alpha) {
  DistributionCurve curve;
  for (double lam = 1.0; lam <= 6.0 + 1e-12; lam += 0.2) {
    curve.lambdas.push_back(lam);
    curve.measures.push_back(c * std::exp(-alpha * lam));
    curve.support_counts.push_back(1000);
  }
  return curve;
}

}  // namespace

TEST_CASE("distribution_curve validates weights and thresholds") {
  const std::vector<double> vals{1.0, 2.0};
  CHECK_THROWS_AS(distribution_curve(vals, {1.0, 1.0}, {0.0, 1.0}),
                  WeightMismatchError);
  CHECK_THROWS_AS(distribution_curve(vals, {kTwoPi, -kPi}, {0.0, 1.0}),
                  WeightMismatchError);
  CHECK_THROWS_AS(distribution_curve(vals, {kPi}, {0.0}), DomainError);
  CHECK_THROWS_AS(distribution_curve(vals, {kPi, kPi}, {}), DomainError);
  CHECK_THROWS_AS(distribution_curve(vals, {kPi, kPi}, {1.0, 1.0}),
                  DomainError);
  CHECK_THROWS_AS(distribution_curve(vals, {kPi, kPi}, {-1.0, 0.0}),
                  DomainError);
}

TEST_CASE("distribution of a two-valued function is a step") {
  // v = 2 on half the circle, 0.5 on the other half
  std::vector<double> vals(64, 2.0);
  std::fill(vals.begin() + 32, vals.end(), 0.5);
  DistributionCurve curve =
      distribution_curve(vals, uniform_weights(64), {0.0, 1.0, 3.0});
  CHECK(curve.measures[0] == doctest::Approx(kTwoPi));
  CHECK(curve.measures[1] == doctest::Approx(kPi));
  CHECK(curve.measures[2] == doctest::Approx(0.0));
  CHECK(curve.support_counts[0] == 64);
  CHECK(curve.support_counts[1] == 32);
  CHECK(curve.support_counts[2] == 0);
  // the threshold is strict: mass of { v > 0.5 } excludes the 0.5 cells
  DistributionCurve at_val =
      distribution_curve(vals, uniform_weights(64), {0.5});
  CHECK(at_val.measures[0] == doctest::Approx(kPi));
}

TEST_CASE("conjugate of pi/2-scaled rho has the closed-form distribution") {
  // (pi/2) rho~ = log|tan(t/2)| on the upper-semicircle symbol, so the
  // one-sided distribution is m(lambda) = 4 atan(e^-lambda).
  const StepSymbol f = scale_symbol(0.5 * kPi, rho(ArcSet({{0.0, kPi}})));
  const GradedGrid mesh({0.0, kPi}, 40);
  const std::vector<double> conj = conjugate_step_exact(f, mesh.nodes());
  const DistributionCurve curve =
      distribution_curve(conj, mesh.weights(), default_lambda_grid());
  for (std::size_t i = 0; i < curve.lambdas.size(); ++i) {
    const double exact = 4.0 * std::atan(std::exp(-curve.lambdas[i]));
    CHECK(std::abs(curve.measures[i] - exact) <= 0.05 * exact + 1e-3);
  }
  // and its exponential decay fit sits near alpha = 1
  const DecayFit fit = fit_decay(curve, 1.0, 6.0);
  CHECK(fit.alpha > 0.9);
  CHECK(fit.alpha < 1.1);
  CHECK(fit.c > 3.0);
  CHECK(fit.c < 5.0);
  CHECK(fit.n_points >= 40);
}

TEST_CASE("layer cake of a two-valued exponential matches pi(e + 1)") {
  const StepSymbol chi = indicator(ArcSet({{0.0, kPi}}));
  const SampledFn s = sample(chi, CircleGrid(4096, 0.5));
  std::vector<double> expv(s.values.size());
  for (std::size_t i = 0; i < expv.size(); ++i)
    expv[i] = std::exp(s.values[i]);
  const LayerCakeResult lc = layer_cake(expv, uniform_weights(expv.size()));
  CHECK(lc.value ==
        doctest::Approx(11.681326876263359).epsilon(1e-3));  // pi(e+1)
  // the flat stretch of the distribution fits alpha ~ 0, so the power
  // tail cannot be certified; nothing is added and the flag stays set
  CHECK(lc.tail_divergent);
  CHECK(lc.tail == 0.0);
  CHECK(lc.value == lc.trapezoid);
}

TEST_CASE("layer cake of zero data is zero and convergent") {
  const LayerCakeResult lc =
      layer_cake(std::vector<double>(128, 0.0), uniform_weights(128));
  CHECK(lc.value == 0.0);
  CHECK_FALSE(lc.tail_divergent);
}

TEST_CASE("layer cake integrates a synthetic exponential curve") {
  DistributionCurve curve;
  curve.lambdas = default_lambda_grid();
  for (double lam : curve.lambdas) {
    curve.measures.push_back(3.0 * std::exp(-2.0 * lam));
    curve.support_counts.push_back(1000);
  }
  const LayerCakeResult lc = layer_cake(curve);
  // int_0^6 3 e^{-2 mu} dmu = 1.5 (1 - e^-12), plus a negligible tail
  CHECK(lc.value == doctest::Approx(1.5).epsilon(1e-2));
  CHECK_FALSE(lc.tail_divergent);
  CHECK(lc.tail_alpha > 1.05);
}

TEST_CASE("slowly decaying tails are flagged divergent") {
  DistributionCurve curve;
  curve.lambdas = default_lambda_grid();
  for (double lam : curve.lambdas) {
    curve.measures.push_back(kTwoPi * std::pow(1.0 + lam, -0.5));
    curve.support_counts.push_back(1000);
  }
  const LayerCakeResult lc = layer_cake(curve);
  CHECK(lc.tail_divergent);
  CHECK(lc.tail == 0.0);
  CHECK(lc.value == doctest::Approx(lc.trapezoid));
}

TEST_CASE("fit_decay recovers exact exponential decay") {
  const DecayFit fit = fit_decay(synthetic_curve(3.0, 2.0), 1.0, 6.0);
  CHECK(fit.c == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.alpha == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.rms_residual < 1e-10);
  // the accumulated lambda grid tops out a hair above 6.0, so the last
  // point may fall outside the closed window
  CHECK(fit.n_points >= 25);
  CHECK(fit.lambda_lo == 1.0);
  CHECK(fit.lambda_hi == 6.0);
}

TEST_CASE("fit_decay demands enough points and support") {
  DistributionCurve curve = synthetic_curve(3.0, 2.0);
  CHECK_THROWS_AS(fit_decay(curve, 5.5, 5.6), InsufficientSupportError);
  CHECK_THROWS_AS(fit_decay(curve, 6.0, 5.0), DomainError);
  for (auto& s : curve.support_counts) s = 5;
  CHECK_THROWS_AS(fit_decay(curve, 1.0, 6.0), InsufficientSupportError);
}

TEST_CASE("Zygmund upper bound holds for a generic arc") {
  std::vector<double> lams;
  for (double l = 0.0; l <= 4.0; l += 1.0) lams.push_back(l);
  const ZygmundCheck chk = zygmund_upper_check(ArcSet({{1.0, 2.0}}), lams, 20);
  REQUIRE(chk.measured.size() == lams.size());
  REQUIRE(chk.bound.size() == lams.size());
  CHECK(chk.all_below);
  for (std::size_t i = 0; i < lams.size(); ++i) {
    CHECK(chk.measured[i] < chk.bound[i]);
    CHECK(chk.bound[i] == doctest::Approx(10.0 * kPi * std::exp(-2.0 * lams[i])));
  }
  CHECK_THROWS_AS(zygmund_upper_check(ArcSet({{0.0, kTwoPi}}), lams, 20),
                  DomainError);
}

TEST_CASE("verdict applies the divergence criterion at the pi/2 threshold") {
  const VerdictReport rep =
      verdict(StepSymbol::constant(0.5 * kPi), ArcSet({{0.0, kPi}}));
  CHECK(rep.verdict == Verdict::non_integrable);
  CHECK(rep.theorem.find("divergence criterion") != std::string::npos);
  CHECK(rep.range_gap == doctest::Approx(kPi));
  CHECK(rep.min_abs_value == doctest::Approx(0.5 * kPi));
  CHECK(rep.max_jump == doctest::Approx(kPi));
  // decay evidence near alpha = 1 comes along with the verdict
  CHECK(rep.fit.n_points > 0);
  CHECK(rep.fit.alpha == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("verdict applies the decomposition bound below the threshold") {
  const VerdictReport rep =
      verdict(StepSymbol::constant(1.0), ArcSet({{0.0, kPi}}));
  CHECK(rep.verdict == Verdict::integrable);
  CHECK(rep.theorem.find("decomposition bound") != std::string::npos);
  CHECK(rep.range_diameter == doctest::Approx(2.0));
}

TEST_CASE("verdict is inconclusive between the criteria") {
  // values {0, pi}: gap is pi but the minimum modulus is 0, and the
  // diameter is exactly pi, so neither result applies
  const StepSymbol f({0.0, kPi, kTwoPi}, {kPi, 0.0});
  const VerdictReport rep = verdict(f, ArcSet({{0.0, kTwoPi}}));
  CHECK(rep.verdict == Verdict::inconclusive);
  CHECK(rep.theorem.empty());
}

TEST_CASE("pi-jump spec verdict reports refinement evidence only") {
  const VerdictReport rep = verdict(JumpSymbolSpec{}, 10, 12);
  CHECK(rep.verdict == Verdict::inconclusive);
  CHECK(rep.reason.find("pi") != std::string::npos);
  CHECK(rep.max_jump == doctest::Approx(kPi));
  // near-convergent exp integral: the refinement ratio stays moderate
  CHECK(rep.refinement_ratio > 0.5);
  CHECK(rep.refinement_ratio < 3.0);
}

TEST_CASE("constant symbols yield trivial evidence") {
  const Evidence ev = gather_evidence(StepSymbol::constant(3.0));
  CHECK(ev.refinement_ratio == doctest::Approx(1.0));
  CHECK(ev.exp_integral.value == doctest::Approx(kTwoPi));
  CHECK_FALSE(ev.exp_integral_divergent);
}
