#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "conjlab/circle.hpp"
#include "conjlab/conjugate.hpp"
#include "conjlab/errors.hpp"
#include "conjlab/testing.hpp"

using namespace conjlab;

namespace {

TrigPoly cosine(int k, int degree) {
  TrigPoly f = TrigPoly::zero(degree);
  f.set_coeff(k, {0.5, 0.0});
  f.set_coeff(-k, {0.5, 0.0});
  return f;
}

}  // namespace

TEST_CASE("multiplier maps cos(nt) to sin(nt) and kills constants") {
  TrigPoly f = cosine(3, 4);
  f.set_coeff(0, {2.0, 0.0});
  TrigPoly g = conjugate_multiplier(f);
  CHECK(g.coeff(0) == std::complex<double>(0.0, 0.0));
  for (double t : {0.1, 1.0, 2.5, 4.0, 6.0})
    CHECK(g.eval_real(t) == doctest::Approx(std::sin(3.0 * t)).epsilon(1e-14));
}

TEST_CASE("conjugation is an anti-involution on mean-zero polys") {
  std::mt19937 rng(12345);
  TrigPoly f = random_real_trigpoly(rng, 16, /*zero_mean=*/false);
  TrigPoly ff = conjugate_multiplier(conjugate_multiplier(f));
  for (double t : {0.3, 1.7, 3.1, 5.9}) {
    const double recentered = f.eval_real(t) - f.mean().real();
    CHECK(ff.eval_real(t) == doctest::Approx(-recentered).epsilon(1e-12));
  }
}

TEST_CASE("conjugate_grid agrees with the multiplier on trig polys") {
  std::mt19937 rng(99);
  TrigPoly f = random_real_trigpoly(rng, 20);
  CircleGrid grid(128, 0.5);
  TrigPoly g = conjugate_multiplier(f);
  std::vector<double> got = conjugate_grid(sample(f, grid));
  REQUIRE(got.size() == grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    CHECK(got[j] == doctest::Approx(g.eval_real(grid.node(j))).epsilon(1e-12));
}

TEST_CASE("conjugate_grid rejects graded and odd-sized grids") {
  GradedGrid gg({1.0}, 5);
  SampledFn s{gg, std::vector<double>(gg.size(), 1.0)};
  CHECK_THROWS_AS(conjugate_grid(s), GridNotUniformError);

  CircleGrid g12(12, 0.5);
  SampledFn s12{g12, std::vector<double>(12, 1.0)};
  CHECK_THROWS_AS(conjugate_grid(s12), GridNotUniformError);
}

TEST_CASE("step conjugate closed form: indicator of upper semicircle") {
  ArcSet e({{0.0, kPi}});
  StepSymbol chi = indicator(e);
  // chi~(t) = (1/pi) log|tan(t/2)|... evaluated: at pi/4 it equals
  // log(tan(pi/8))/pi.
  CHECK(conjugate_step_exact(chi, kPi / 4.0) ==
        doctest::Approx(-0.28054992616959007).epsilon(1e-13));
  // odd reflection through pi/2: chi~(pi - t) = -chi~(t)
  for (double t : {0.2, 0.7, 1.3})
    CHECK(conjugate_step_exact(chi, kPi - t) ==
          doctest::Approx(-conjugate_step_exact(chi, t)).epsilon(1e-12));
}

TEST_CASE("rho of the upper semicircle conjugates to (2/pi) log|tan(t/2)|") {
  StepSymbol r = rho(ArcSet({{0.0, kPi}}));
  for (double t : {0.05, 0.5, 1.0, 2.0, 3.0, 4.5, 6.0}) {
    const double want = 2.0 / kPi * std::log(std::abs(std::tan(0.5 * t)));
    CHECK(conjugate_step_exact(r, t) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("step conjugate refuses evaluation at a genuine jump") {
  StepSymbol f({0.0, 1.0, kTwoPi}, {1.0, 0.0});
  CHECK_THROWS_AS(conjugate_step_exact(f, 1.0), AtBreakpointError);
  CHECK_THROWS_AS(conjugate_step_exact(f, 0.0), AtBreakpointError);
  // vector form propagates the same guard
  CHECK_THROWS_AS(conjugate_step_exact(f, std::vector<double>{0.5, 1.0}),
                  AtBreakpointError);
}

TEST_CASE("PV quadrature is spectrally exact midway between nodes") {
  TrigPoly f = cosine(3, 3);
  CircleGrid grid(64, 0.5);
  SampledFn s = sample(f, grid);
  // midpoints of an offset-0.5 grid sit at offset 0 and offset 1 angles
  for (double t : midpoint_angles(grid))
    CHECK(conjugate_pv(s, t) ==
          doctest::Approx(std::sin(3.0 * t)).epsilon(1e-12));
}

TEST_CASE("plain PV throws on node collision, subtracted PV does not") {
  TrigPoly f = cosine(2, 2);
  CircleGrid grid(32, 0.5);
  SampledFn s = sample(f, grid);
  const double t = grid.node(5);
  CHECK_THROWS_AS(conjugate_pv(s, t), SingularNodeError);
  const double got = conjugate_pv(s, t, f.eval_real(t));
  // at a node the subtraction reduces to the node rule, whose kernel
  // cot(pi m/n) scales bin k by 1 - 2k/n
  CHECK(got == doctest::Approx((1.0 - 4.0 / 32.0) * std::sin(2.0 * t))
                   .epsilon(1e-11));
}

TEST_CASE("subtracted PV reproduces the lattice sum at arbitrary points") {
  std::mt19937 rng(7);
  TrigPoly f = random_real_trigpoly(rng, 10);
  TrigPoly g = conjugate_multiplier(f);
  CircleGrid grid(256, 0.5);
  SampledFn s = sample(f, grid);
  std::uniform_real_distribution<double> unif(0.0, kTwoPi);
  int checked = 0;
  while (checked < 20) {
    const double t = unif(rng);
    // the raw lattice sum equals the true conjugate plus the artifact
    // f(t) cot(n (t - theta_0)/2), which vanishes only midway between
    // nodes; the identity is exact for degree <= n - 2
    const double phase = 0.5 * 256.0 * (t - grid.node(0));
    if (std::abs(std::sin(phase)) < 1e-2) continue;
    const double want = g.eval_real(t) + f.eval_real(t) / std::tan(phase);
    const double got = conjugate_pv(s, t, f.eval_real(t));
    CHECK(std::abs(got - want) <= 1e-8 * (1.0 + std::abs(want)));
    ++checked;
  }
}

TEST_CASE("FFT midpoint PV equals the direct quadrature") {
  std::mt19937 rng(2026);
  TrigPoly f = random_real_trigpoly(rng, 12);
  CircleGrid grid(128, 0.5);
  SampledFn s = sample(f, grid);
  std::vector<double> fast = conjugate_pv_midpoints(s);
  std::vector<double> mids = midpoint_angles(grid);
  REQUIRE(fast.size() == mids.size());
  for (std::size_t j = 0; j < mids.size(); ++j)
    CHECK(fast[j] == doctest::Approx(conjugate_pv(s, mids[j])).epsilon(1e-11));
}

TEST_CASE("FFT node PV equals the subtracted quadrature at the nodes") {
  std::mt19937 rng(31);
  TrigPoly f = random_real_trigpoly(rng, 12);
  CircleGrid grid(128, 0.5);
  SampledFn s = sample(f, grid);
  std::vector<double> fast = conjugate_pv_nodes(s);
  REQUIRE(fast.size() == grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = grid.node(j);
    CHECK(fast[j] ==
          doctest::Approx(conjugate_pv(s, t, s.values[j])).epsilon(1e-11));
  }
}

TEST_CASE("conjugation commutes with rotation") {
  ArcSet e({{1.0, 2.5}});
  const double phi = 0.8;
  StepSymbol chi = indicator(e);
  StepSymbol chi_rot = indicator(e.rotated(phi));
  for (double t : {0.3, 1.9, 3.3, 5.1})
    CHECK(conjugate_step_exact(chi_rot, t + phi) ==
          doctest::Approx(conjugate_step_exact(chi, t)).epsilon(1e-12));
}

TEST_CASE("cross_check: FFT exact, node PV within the attenuation budget") {
  std::mt19937 rng(5);
  TrigPoly f = random_real_trigpoly(rng, 24);
  ConjugationReport rep = cross_check(f, CircleGrid(256, 0.5));
  CHECK(rep.n == 256);
  CHECK(rep.max_fft_vs_exact < 1e-10);
  // the node rule scales bin k by 1 - 2k/n, so its drift from exact is
  // at most (2/n) sum_k 2k |a_k| and is genuinely nonzero
  double budget = 0.0;
  for (int k = 1; k <= f.degree(); ++k)
    budget += 4.0 * k * std::abs(f.coeff(k)) / 256.0;
  CHECK(rep.max_pv_vs_exact > 1e-6);
  CHECK(rep.max_pv_vs_exact <= budget + 1e-9);
  CHECK(rep.max_fft_vs_pv <= budget + 1e-9);
}
