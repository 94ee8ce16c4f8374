#pragma once

#include <cstdint>

#include "conjlab/circle.hpp"

namespace conjlab {

struct SeriesValue {
  double value = 0.0;
  std::uint64_t n_terms = 0;   // largest summed index
  double tail_bound = 0.0;     // rigorous bound on the discarded tail
};

// Hard cap on series length; TooExpensiveError beyond it.
inline constexpr std::uint64_t kSeriesTermCap = 1'000'000'000;

// sum_{n>=2} cos(nx)/(n log n) to absolute accuracy tol, summed in
// rotation blocks with compensated accumulation. Defined for x in
// (0, 2pi), even about pi.
SeriesValue loglog_cos_series(double x, double tol);

// sum_{n>=2} sin(nx)/(n log n); odd, zero at x = 0 and pi.
SeriesValue loglog_sin_series(double x, double tol);

// Number of terms the cos/sin series would use at (x, tol) after the
// self-consistent cutoff iteration; may exceed the cap.
double series_term_estimate(double x, double tol);

// B = lim ( sum_{2<=n<=N} 1/(n log n) - log log N ), via direct summation
// with a midpoint tail correction.
double constant_b(std::uint64_t n_terms);
double constant_b();  // cached default, n_terms = 1e8

// log log(1/x) + B; domain 0 < x < 1/e.
double asymptote(double x);

// Bounded symbol with a genuine pi-jump at t0: a step of height +-pi/2 on
// (t0 - delta, t0 + delta) tapered linearly back to zero over taper_width
// on each side, plus the continuous sine series h(t) = 2 sum sin(n(t-t0))/(n log n).
struct JumpSymbolSpec {
  double t0 = kPi;
  double delta = 0.5;
  double taper_width = 0.25;
};

void validate(const JumpSymbolSpec& spec);

// Step-plus-taper part, the symbol minus its sine series.
double jump_taper_part(const JumpSymbolSpec& spec, double t);

// Discontinuous step summand of the taper part (jump +pi at t0, jumps
// -pi/2 at t0 +- delta); its conjugate is in closed form.
StepSymbol jump_step_symbol(const JumpSymbolSpec& spec);

// f(t) itself; AtJumpError within 1e-15 of t0.
double jump_symbol(const JumpSymbolSpec& spec, double t, double tol = 1e-6);

// Conjugate f~(t): step part in closed form, the piecewise linear taper
// remainder by principal value on a grid shifted so t sits midway
// between nodes, and the series part
//   h~(t) = -2 sum cos(n(t - t0))/(n log n)
// summed when affordable and replaced by its asymptote
//   -2 (log log(1/|t - t0|) + B)
// when the cutoff would exceed effort_cap terms. AtJumpError at t0;
// AtBreakpointError at the taper breakpoints.
double jump_conjugate(const JumpSymbolSpec& spec, double t, double tol = 1e-3,
                      std::uint64_t effort_cap = 1u << 27);

}  // namespace conjlab
