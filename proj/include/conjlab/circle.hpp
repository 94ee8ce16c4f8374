#pragma once

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

namespace conjlab {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Reduce an angle to [0, 2*pi).
double wrap_angle(double t);

// Circular distance to the nearest representative, in [0, pi].
double circle_distance(double s, double t);

// Uniform grid theta_j = 2*pi*(j + offset)/n with offset in [0, 1).
// The default half offset keeps nodes away from 0, pi and other
// breakpoints of the symbols used throughout.
class CircleGrid {
public:
  explicit CircleGrid(std::size_t n, double offset = 0.5);

  std::size_t size() const { return n_; }
  double offset() const { return offset_; }
  double spacing() const;
  double node(std::size_t j) const;
  std::vector<double> nodes() const;
  bool is_power_of_two() const;

private:
  std::size_t n_;
  double offset_;
};

// Trigonometric polynomial sum_{|n| <= N} a_n e^{int}, coefficients
// stored contiguously with index n + N.
class TrigPoly {
public:
  explicit TrigPoly(std::vector<std::complex<double>> coeffs);
  static TrigPoly zero(int degree);

  int degree() const { return degree_; }
  std::complex<double> coeff(int n) const;
  void set_coeff(int n, std::complex<double> value);
  std::complex<double> mean() const { return coeff(0); }

  // True when a_{-n} = conj(a_n) for all n, so eval has real values.
  bool is_real(double tol = 1e-12) const;

  std::complex<double> eval(double t) const;
  double eval_real(double t) const;

private:
  int degree_;
  std::vector<std::complex<double>> coeffs_;
};

// Closed arc [a, b] with 0 <= a < b <= 2*pi.
struct Arc {
  double a;
  double b;
  double length() const { return b - a; }
};

// Finite union of arcs, normalized to sorted, pairwise disjoint,
// non-wrapping representatives.
class ArcSet {
public:
  ArcSet() = default;
  explicit ArcSet(std::vector<Arc> arcs);

  const std::vector<Arc>& arcs() const { return arcs_; }
  double measure() const;
  bool contains(double t) const;
  ArcSet rotated(double phi) const;

private:
  std::vector<Arc> arcs_;
};

// Piecewise constant function on the circle. Breakpoints are strictly
// increasing with breakpoints.front() == 0 and breakpoints.back() == 2*pi;
// values[i] holds on the open arc (breakpoints[i], breakpoints[i+1]).
// The jump at 0 is values.front() - values.back().
class StepSymbol {
public:
  StepSymbol(std::vector<double> breakpoints, std::vector<double> values);
  static StepSymbol constant(double c);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

  // Throws AtBreakpointError within 1e-12 of a genuine jump.
  double value_at(double t) const;

  double sup_norm() const;
  double mean() const;

  // Jump values.front() - values.back() at 0, values[i] - values[i-1]
  // at interior breakpoints; zero entries kept.
  std::vector<double> jump_heights() const;
  double max_abs_jump() const;

private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

// +1 on E, -1 on the complement.
StepSymbol rho(const ArcSet& e);

// Indicator of E.
StepSymbol indicator(const ArcSet& e);

// Pointwise product on the merged breakpoint set.
StepSymbol scale_symbol(const StepSymbol& f, const StepSymbol& g);
StepSymbol scale_symbol(double c, const StepSymbol& g);

// Largest open interval inside [min value, max value] free of attained
// values; zero for constants.
double essential_range_gap(const StepSymbol& f);

// Geometrically graded mesh: a uniform background grid plus clusters of
// nodes accumulating at each anchor at rate `ratio` per level, with
// `nodes_per_level` uniformly spaced nodes per dyadic shell. Weights are
// circular midpoint cell widths and sum to 2*pi.
class GradedGrid {
public:
  GradedGrid(std::vector<double> anchors, int depth, double ratio = 0.5,
             std::size_t background_n = 4096, int nodes_per_level = 12);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& anchors() const { return anchors_; }
  int depth() const { return depth_; }
  double ratio() const { return ratio_; }
  std::size_t size() const { return nodes_.size(); }

private:
  std::vector<double> anchors_;
  int depth_;
  double ratio_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Samples of a function over either grid kind.
struct SampledFn {
  std::variant<CircleGrid, GradedGrid> grid;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  std::vector<double> node_angles() const;
};

// Throws NodeAtJumpError if a node lands on a jump of f.
SampledFn sample(const StepSymbol& f, const CircleGrid& grid);
SampledFn sample(const TrigPoly& f, const CircleGrid& grid);

}  // namespace conjlab
