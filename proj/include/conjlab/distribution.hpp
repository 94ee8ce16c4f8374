#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "conjlab/circle.hpp"
#include "conjlab/series.hpp"

namespace conjlab {

// Empirical distribution function m(lambda) = |{ |v| > lambda }| measured
// with cell weights; measures are nonincreasing in [0, 2pi].
struct DistributionCurve {
  std::vector<double> lambdas;
  std::vector<double> measures;
  std::vector<std::size_t> support_counts;  // cells above each threshold
};

// Least-squares fit m(lambda) ~= C exp(-alpha lambda) over a window.
struct DecayFit {
  double c = 0.0;
  double alpha = 0.0;
  double rms_residual = 0.0;  // of log m
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  std::size_t n_points = 0;
};

struct LayerCakeResult {
  double value = 0.0;      // trapezoid + tail when the tail converges
  double trapezoid = 0.0;
  double tail = 0.0;
  double tail_alpha = 0.0; // fitted power of the tail, m ~ mu^-alpha
  bool tail_divergent = false;
};

enum class Verdict { integrable, non_integrable, inconclusive };
std::string to_string(Verdict v);

struct VerdictReport {
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  std::string theorem;       // which result justified the verdict, or empty
  double range_gap = 0.0;
  double range_diameter = 0.0;
  double min_abs_value = 0.0;
  double max_jump = 0.0;
  DecayFit fit;              // decay of the conjugate's distribution
  double refinement_ratio = 0.0;  // exp-integral growth, depth 30 -> 40
  bool exp_integral_divergent = false;
};

// Weights must sum to 2pi within 1e-9 (WeightMismatchError); lambdas
// must be nonnegative and strictly increasing. One sided: mass of
// { v > lambda }, callers pass |v| for two-sided level sets.
DistributionCurve distribution_curve(const std::vector<double>& values,
                                     const std::vector<double>& weights,
                                     const std::vector<double>& lambdas);

// Weights from the grid: midpoint cells for graded grids, uniform 2pi/n
// for circle grids.
DistributionCurve distribution_curve(const SampledFn& f,
                                     const std::vector<double>& lambdas);

// 61 thresholds uniform on [0, 6].
std::vector<double> default_lambda_grid();

// int_0^inf m(mu) dmu by trapezoid over the curve plus a power-law tail
// m ~ C mu^-alpha fitted on the last two decades; the tail closed form
// m_last * mu_last / (alpha - 1) is added only when alpha > 1.05,
// otherwise the result is flagged divergent.
LayerCakeResult layer_cake(const DistributionCurve& curve);

// Layer cake of nonnegative values directly: mu grid {0} followed by
// n_mu points geometric between the smallest positive value and the max.
LayerCakeResult layer_cake(const std::vector<double>& values,
                           const std::vector<double>& weights,
                           std::size_t n_mu = 8192);

// Exponential decay fit over lambda in [lo, hi]. Points with zero
// measure are skipped; InsufficientSupportError when fewer than 10
// curve points remain or the smallest included measure rests on fewer
// than 10 cells.
DecayFit fit_decay(const DistributionCurve& curve, double lambda_lo,
                   double lambda_hi);

// Weak-type upper bound check for the conjugate indicator: measured
// m(lambda) of |chi_E~| against 10 pi exp(-2 lambda) on a graded mesh
// anchored at the arc endpoints.
struct ZygmundCheck {
  std::vector<double> lambdas;
  std::vector<double> measured;
  std::vector<double> bound;
  bool all_below = true;
};

ZygmundCheck zygmund_upper_check(const ArcSet& e,
                                 const std::vector<double>& lambdas,
                                 int depth = 40);

// Classify integrability of exp of the conjugate of f restricted to E,
// i.e. of f * rho_E. A range gap >= pi with min |value| >= pi/2 triggers
// the divergence criterion; an essential range of diameter < pi admits a
// recentering f - c with sup norm < pi/2 and triggers the decomposition
// bound; anything else reports evidence only.
VerdictReport verdict(const StepSymbol& f, const ArcSet& e);
VerdictReport verdict(const JumpSymbolSpec& spec, int depth_lo = 30,
                      int depth_hi = 40);

// Shared evidence pipeline: conjugate of f sampled on graded meshes
// anchored at its jumps, decay fit on [1, 6], and the exp-integral
// refinement ratio between depths 30 and 40.
struct Evidence {
  DecayFit fit;
  double refinement_ratio = 0.0;
  bool exp_integral_divergent = false;
  LayerCakeResult exp_integral;  // at depth 40
};

Evidence gather_evidence(const StepSymbol& f);

}  // namespace conjlab
