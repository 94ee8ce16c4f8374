#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "conjlab/circle.hpp"

namespace conjlab {

// Fourier multiplier -i*sgn(n): cos(nt) -> sin(nt), sin(nt) -> -cos(nt),
// constants -> 0. Exact on trigonometric polynomials.
TrigPoly conjugate_multiplier(const TrigPoly& f);

// Grid conjugate via FFT with the same multiplier applied per bin; the
// unsigned Nyquist bin is zeroed. Requires a uniform power-of-two grid.
std::vector<double> conjugate_grid(const SampledFn& f);

// Principal-value quadrature
//   f~(t) ~= (1/n) sum_j f_j cot((t - theta_j)/2),
// spectrally accurate midway between nodes of an even uniform grid where
// the cotangent poles cancel pairwise. Throws SingularNodeError within
// 1e-12 of a node.
double conjugate_pv(const SampledFn& f, double t);

// Subtracted principal value for arbitrary t. Uses the lattice identity
//   sum_j cot((t - theta_j)/2) = n cot(n (t - theta_0)/2),
// so only f_j - f(t) is summed and the pole is removed analytically.
double conjugate_pv(const SampledFn& f, double t, double f_at_t);

// The same cotangent sums at all n midpoints at once, evaluated as a
// circular convolution via the FFT; identical values up to rounding.
std::vector<double> conjugate_pv_midpoints(const SampledFn& f);

// Subtracted principal value at all n nodes at once. At a node the
// symmetric cotangent sum over the remaining nodes vanishes, so the
// subtraction drops out and the sums again form a circular convolution,
// now with kernel cot(pi m / n) and a zero self term.
std::vector<double> conjugate_pv_nodes(const SampledFn& f);

// Midpoint angles matching conjugate_pv_midpoints output order.
std::vector<double> midpoint_angles(const CircleGrid& grid);

// Closed form for a step symbol:
//   f~(t) = (1/pi) sum_b J_b log|sin((t - b)/2)|
// over breakpoints b with jump heights J_b. Throws AtBreakpointError
// within 1e-15 of a genuine jump, where the value is effectively +-inf;
// any farther point evaluates (graded meshes probe down to ~1e-13).
double conjugate_step_exact(const StepSymbol& f, double t);
std::vector<double> conjugate_step_exact(const StepSymbol& f,
                                         const std::vector<double>& ts);

// Cross-method agreement report on a common grid.
struct ConjugationReport {
  std::size_t n = 0;
  double max_fft_vs_exact = 0.0;
  double max_pv_vs_exact = 0.0;
  double max_fft_vs_pv = 0.0;
};

ConjugationReport cross_check(const TrigPoly& f, const CircleGrid& grid);

}  // namespace conjlab
