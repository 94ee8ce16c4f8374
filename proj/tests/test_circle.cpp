#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "conjlab/circle.hpp"
#include "conjlab/errors.hpp"

using namespace conjlab;

TEST_CASE("wrap_angle reduces to [0, 2pi)") {
  CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
  CHECK(wrap_angle(kTwoPi) == doctest::Approx(0.0));
  CHECK(wrap_angle(-0.5) == doctest::Approx(kTwoPi - 0.5));
  CHECK(wrap_angle(7.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(1.25) >= 0.0);
  CHECK(wrap_angle(1.25) < kTwoPi);
}

TEST_CASE("circle_distance is symmetric and capped at pi") {
  CHECK(circle_distance(0.1, 0.3) == doctest::Approx(0.2));
  CHECK(circle_distance(0.3, 0.1) == doctest::Approx(0.2));
  CHECK(circle_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
  CHECK(circle_distance(0.0, kPi) == doctest::Approx(kPi));
  CHECK(circle_distance(1.0, 1.0 + kTwoPi) == doctest::Approx(0.0));
}

TEST_CASE("CircleGrid node formula and validation") {
  CircleGrid g(8, 0.5);
  CHECK(g.size() == 8);
  CHECK(g.spacing() == doctest::Approx(kTwoPi / 8.0));
  CHECK(g.node(0) == doctest::Approx(kTwoPi * 0.5 / 8.0));
  CHECK(g.node(7) == doctest::Approx(kTwoPi * 7.5 / 8.0));
  CHECK(g.nodes().size() == 8);
  CHECK(g.is_power_of_two());
  CHECK_FALSE(CircleGrid(6).is_power_of_two());
  CHECK_FALSE(CircleGrid(12, 0.25).is_power_of_two());
  CHECK_THROWS_AS(CircleGrid(0), DomainError);
  CHECK_THROWS_AS(CircleGrid(8, 1.0), DomainError);
  CHECK_THROWS_AS(CircleGrid(8, -0.1), DomainError);
  CHECK_THROWS_AS(g.node(8), DomainError);
}

TEST_CASE("TrigPoly eval and coefficient access") {
  // f(t) = 1 + 2 cos t = 1 + e^{it} + e^{-it}
  TrigPoly f = TrigPoly::zero(3);
  f.set_coeff(0, 1.0);
  f.set_coeff(1, 1.0);
  f.set_coeff(-1, 1.0);
  CHECK(f.degree() == 3);
  CHECK(f.is_real());
  CHECK(f.eval_real(0.0) == doctest::Approx(3.0));
  CHECK(f.eval_real(kPi) == doctest::Approx(-1.0));
  CHECK(f.eval(0.7).imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f.mean() == std::complex<double>(1.0, 0.0));
  // out-of-range reads are zero, writes throw
  CHECK(f.coeff(5) == std::complex<double>(0.0, 0.0));
  CHECK_THROWS_AS(f.set_coeff(4, 1.0), DomainError);

  TrigPoly g = TrigPoly::zero(1);
  g.set_coeff(1, {0.0, 1.0});  // i e^{it} alone is not real valued
  CHECK_FALSE(g.is_real());
}

TEST_CASE("ArcSet merges overlapping arcs and measures correctly") {
  ArcSet e({{1.0, 2.0}, {1.5, 3.0}, {4.0, 5.0}});
  CHECK(e.arcs().size() == 2);
  CHECK(e.measure() == doctest::Approx(3.0));
  CHECK(e.contains(1.2));
  CHECK(e.contains(2.5));
  CHECK(e.contains(4.5));
  CHECK_FALSE(e.contains(3.5));
  CHECK_FALSE(e.contains(0.5));
  CHECK_THROWS_AS(ArcSet({{2.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(ArcSet({{-0.1, 1.0}}), DomainError);
  CHECK_THROWS_AS(ArcSet({{0.0, kTwoPi + 0.1}}), DomainError);
}

TEST_CASE("ArcSet rotation preserves measure and membership") {
  ArcSet e({{0.0, 1.0}});
  ArcSet r = e.rotated(kTwoPi - 0.5);  // wraps around 0
  CHECK(r.measure() == doctest::Approx(1.0));
  CHECK(r.contains(0.25));
  CHECK(r.contains(kTwoPi - 0.25));
  CHECK_FALSE(r.contains(1.0));
}

TEST_CASE("StepSymbol constructor validation") {
  CHECK_THROWS_AS(StepSymbol({0.0}, {}), DomainError);
  CHECK_THROWS_AS(StepSymbol({0.0, kTwoPi}, {1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(StepSymbol({0.1, kTwoPi}, {1.0}), DomainError);
  CHECK_THROWS_AS(StepSymbol({0.0, 6.0}, {1.0}), DomainError);
  CHECK_THROWS_AS(StepSymbol({0.0, 2.0, 1.0, kTwoPi}, {1.0, 2.0, 3.0}),
                  DomainError);
}

TEST_CASE("StepSymbol values, jumps and sup norm") {
  StepSymbol f({0.0, 1.0, 4.0, kTwoPi}, {2.0, -1.0, 0.5});
  CHECK(f.value_at(0.5) == doctest::Approx(2.0));
  CHECK(f.value_at(2.0) == doctest::Approx(-1.0));
  CHECK(f.value_at(5.0) == doctest::Approx(0.5));
  CHECK(f.value_at(5.0 - kTwoPi) == doctest::Approx(0.5));
  CHECK(f.sup_norm() == doctest::Approx(2.0));
  // mean = (2*1 + (-1)*3 + 0.5*(2pi-4)) / 2pi
  const double want = (2.0 * 1.0 - 1.0 * 3.0 + 0.5 * (kTwoPi - 4.0)) / kTwoPi;
  CHECK(f.mean() == doctest::Approx(want));
  auto j = f.jump_heights();
  REQUIRE(j.size() == 3);
  CHECK(j[0] == doctest::Approx(2.0 - 0.5));   // at 0
  CHECK(j[1] == doctest::Approx(-1.0 - 2.0));  // at 1
  CHECK(j[2] == doctest::Approx(0.5 + 1.0));   // at 4
  CHECK(f.max_abs_jump() == doctest::Approx(3.0));
  CHECK_THROWS_AS(f.value_at(1.0), AtBreakpointError);
  CHECK_THROWS_AS(f.value_at(4.0 + 1e-13), AtBreakpointError);
}

TEST_CASE("StepSymbol tolerates value_at at a vanishing jump") {
  // equal values on both sides of 3.0: not a genuine jump
  StepSymbol f({0.0, 3.0, kTwoPi}, {1.5, 1.5});
  CHECK(f.value_at(3.0) == doctest::Approx(1.5));
}

TEST_CASE("constant symbol has no jumps and zero range gap") {
  StepSymbol c = StepSymbol::constant(0.75);
  CHECK(c.value_at(1.0) == doctest::Approx(0.75));
  CHECK(c.mean() == doctest::Approx(0.75));
  CHECK(c.max_abs_jump() == doctest::Approx(0.0));
  CHECK(essential_range_gap(c) == doctest::Approx(0.0));
}

TEST_CASE("rho and indicator of an arc set") {
  ArcSet e({{1.0, 2.0}});
  StepSymbol r = rho(e);
  CHECK(r.value_at(1.5) == doctest::Approx(1.0));
  CHECK(r.value_at(0.5) == doctest::Approx(-1.0));
  CHECK(essential_range_gap(r) == doctest::Approx(2.0));

  StepSymbol chi = indicator(e);
  CHECK(chi.value_at(1.5) == doctest::Approx(1.0));
  CHECK(chi.value_at(3.0) == doctest::Approx(0.0));
  CHECK(chi.mean() == doctest::Approx(1.0 / kTwoPi));
}

TEST_CASE("scale_symbol multiplies on the merged breakpoint set") {
  ArcSet e({{1.0, 3.0}});
  StepSymbol f({0.0, 2.0, kTwoPi}, {4.0, -2.0});
  StepSymbol fr = scale_symbol(f, rho(e));
  CHECK(fr.value_at(0.5) == doctest::Approx(-4.0));  // f=4, rho=-1
  CHECK(fr.value_at(1.5) == doctest::Approx(4.0));   // f=4, rho=+1
  CHECK(fr.value_at(2.5) == doctest::Approx(-2.0));  // f=-2, rho=+1
  CHECK(fr.value_at(4.0) == doctest::Approx(2.0));   // f=-2, rho=-1

  StepSymbol half = scale_symbol(0.5, f);
  CHECK(half.value_at(0.5) == doctest::Approx(2.0));
  CHECK(half.value_at(3.0) == doctest::Approx(-1.0));
}

TEST_CASE("essential_range_gap finds the largest hole in the range") {
  StepSymbol f({0.0, 1.0, 2.0, kTwoPi}, {0.0, 5.0, 1.5});
  // attained values {0, 1.5, 5}: largest gap is 5 - 1.5 = 3.5
  CHECK(essential_range_gap(f) == doctest::Approx(3.5));
}

TEST_CASE("GradedGrid weights sum to 2pi and cluster at anchors") {
  GradedGrid g({0.0, kPi}, 20);
  double total = 0.0;
  for (double w : g.weights()) {
    CHECK(w > 0.0);
    total += w;
  }
  CHECK(total == doctest::Approx(kTwoPi).epsilon(1e-12));
  CHECK(g.size() == g.weights().size());
  CHECK(g.depth() == 20);
  CHECK(g.ratio() == doctest::Approx(0.5));

  // nodes must accumulate geometrically close to each anchor
  double closest = kTwoPi;
  for (double t : g.nodes()) closest = std::min(closest, circle_distance(t, kPi));
  CHECK(closest < 1e-5);

  CHECK_THROWS_AS(GradedGrid({}, 10), DomainError);
  CHECK_THROWS_AS(GradedGrid({1.0}, 0), DomainError);
  CHECK_THROWS_AS(GradedGrid({1.0}, 10, 1.5), DomainError);
  CHECK_THROWS_AS(GradedGrid({1.0, 1.0}, 10), DomainError);
}

TEST_CASE("deeper GradedGrid reaches closer to the anchor") {
  auto closest = [](const GradedGrid& g, double a) {
    double best = kTwoPi;
    for (double t : g.nodes()) best = std::min(best, circle_distance(t, a));
    return best;
  };
  GradedGrid g10({2.0}, 10), g20({2.0}, 20);
  CHECK(closest(g20, 2.0) < closest(g10, 2.0));
}

TEST_CASE("sample places step values at grid nodes") {
  StepSymbol f({0.0, kPi, kTwoPi}, {1.0, -1.0});
  CircleGrid g(16, 0.5);
  SampledFn s = sample(f, g);
  REQUIRE(s.size() == 16);
  auto angles = s.node_angles();
  for (std::size_t j = 0; j < 16; ++j)
    CHECK(s.values[j] == doctest::Approx(angles[j] < kPi ? 1.0 : -1.0));

  // offset 0 grid puts node 0 exactly on the jump at 0
  CHECK_THROWS_AS(sample(f, CircleGrid(16, 0.0)), NodeAtJumpError);
}

TEST_CASE("sample of a TrigPoly matches pointwise evaluation") {
  TrigPoly f = TrigPoly::zero(2);
  f.set_coeff(1, {0.5, 0.0});
  f.set_coeff(-1, {0.5, 0.0});
  f.set_coeff(2, {0.0, -0.5});
  f.set_coeff(-2, {0.0, 0.5});
  CircleGrid g(32);
  SampledFn s = sample(f, g);
  for (std::size_t j = 0; j < g.size(); ++j)
    CHECK(s.values[j] == doctest::Approx(f.eval_real(g.node(j))).epsilon(1e-13));
}
