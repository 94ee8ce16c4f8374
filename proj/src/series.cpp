#include "conjlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conjlab/conjugate.hpp"
#include "conjlab/errors.hpp"

namespace conjlab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void kahan_add(double& acc, double& comp, double term) {
  const double y = term - comp;
  const double s = acc + y;
  comp = (s - acc) - y;
  acc = s;
}

// Re-seed the rotation with exact cos/sin every block to stop error
// growth in the two-term recurrence.
constexpr std::uint64_t kBlock = 1u << 20;

// Signed representative of t in (-pi, pi].
double wrap_signed(double t) {
  double w = wrap_angle(t);
  if (w > kPi) w -= kTwoPi;
  return w;
}

struct TrigSum {
  double cos_sum = 0.0;
  double sin_sum = 0.0;
};

// sum_{n=2}^{N-1} e^{inx} / (n log n), both components in one pass.
TrigSum partial_sums(double x, std::uint64_t n_stop) {
  TrigSum out;
  double ccomp = 0.0, scomp = 0.0;
  const double alpha = 2.0 * std::sin(0.5 * x) * std::sin(0.5 * x);
  const double beta = std::sin(x);
  for (std::uint64_t b = 2; b < n_stop; b += kBlock) {
    const std::uint64_t e = std::min(n_stop, b + kBlock);
    double c = std::cos(static_cast<double>(b) * x);
    double s = std::sin(static_cast<double>(b) * x);
    for (std::uint64_t n = b; n < e; ++n) {
      const double w = 1.0 / (static_cast<double>(n) * std::log(static_cast<double>(n)));
      kahan_add(out.cos_sum, ccomp, c * w);
      kahan_add(out.sin_sum, scomp, s * w);
      const double cn = c - (alpha * c + beta * s);
      const double sn = s - (alpha * s - beta * c);
      c = cn;
      s = sn;
    }
  }
  return out;
}

// Abel bound for the discarded tail: partial sums of e^{inx} are bounded
// by 1/|sin(x/2)| <= pi/|x| on (-pi, pi], and 1/(n log n) decreases.
double tail_bound_at(double x, std::uint64_t n_stop) {
  return 4.0 * kPi /
         (std::abs(x) * static_cast<double>(n_stop) *
          std::log(static_cast<double>(n_stop)));
}

std::uint64_t select_terms(double x, double tol, const char* who) {
  const double est = series_term_estimate(x, tol);
  if (!(est <= static_cast<double>(kSeriesTermCap)))
    throw TooExpensiveError(std::string(who) + ": needs about " + fmt(est) +
                            " terms, cap is " + std::to_string(kSeriesTermCap));
  return static_cast<std::uint64_t>(est);
}

}  // namespace

double series_term_estimate(double x, double tol) {
  if (!(tol > 0.0)) throw DomainError("series_term_estimate: tol must be positive");
  const double w = std::abs(wrap_signed(x));
  if (w == 0.0) throw DomainError("series_term_estimate: x is a multiple of 2*pi");
  // Self-consistent cutoff for tail <= tol: N log N = 4 pi / (x tol).
  const double raw = 4.0 * kPi / (w * tol);
  double n = raw;
  for (int i = 0; i < 3; ++i) n = raw / std::log(std::max(2.0, n));
  return std::ceil(n);
}

SeriesValue loglog_cos_series(double x, double tol) {
  const double w = std::abs(wrap_signed(x));
  if (w == 0.0)
    throw DomainError("loglog_cos_series: diverges at multiples of 2*pi");
  const std::uint64_t n_stop = select_terms(w, tol, "loglog_cos_series");
  SeriesValue out;
  out.value = partial_sums(w, n_stop).cos_sum;
  out.n_terms = n_stop - 1;
  out.tail_bound = tail_bound_at(w, n_stop);
  return out;
}

SeriesValue loglog_sin_series(double x, double tol) {
  const double w = wrap_signed(x);
  if (w == 0.0 || std::abs(w) == kPi) return {0.0, 0, 0.0};  // all terms vanish
  const std::uint64_t n_stop = select_terms(std::abs(w), tol, "loglog_sin_series");
  SeriesValue out;
  const double s = partial_sums(std::abs(w), n_stop).sin_sum;
  out.value = w > 0.0 ? s : -s;
  out.n_terms = n_stop - 1;
  out.tail_bound = tail_bound_at(w, n_stop);
  return out;
}

double constant_b(std::uint64_t n_terms) {
  if (n_terms < 10) throw DomainError("constant_b: n_terms must be >= 10");
  double acc = 0.0, comp = 0.0;
  for (std::uint64_t n = 2; n <= n_terms; ++n)
    kahan_add(acc, comp, 1.0 / (static_cast<double>(n) * std::log(static_cast<double>(n))));
  // Midpoint tail: sum_{n<=N} - int^{N+1/2} matches the limit to O(N^-2).
  return acc - std::log(std::log(static_cast<double>(n_terms) + 0.5));
}

double constant_b() {
  static const double cached = constant_b(100'000'000);
  return cached;
}

double asymptote(double x) {
  if (!(x > 0.0 && x < std::exp(-1.0)))
    throw DomainError("asymptote: x must lie in (0, 1/e), got " + fmt(x));
  return std::log(std::log(1.0 / x)) + constant_b();
}

void validate(const JumpSymbolSpec& spec) {
  if (!(spec.delta > 0.0)) throw DomainError("JumpSymbolSpec: delta must be positive");
  if (!(spec.taper_width > 0.0))
    throw DomainError("JumpSymbolSpec: taper_width must be positive");
  if (!(spec.t0 - spec.delta - spec.taper_width > 0.0 &&
        spec.t0 + spec.delta + spec.taper_width < kTwoPi))
    throw DomainError("JumpSymbolSpec: support must stay inside (0, 2*pi)");
}

namespace {

// Bounded part of the symbol: +-pi/2 around the jump at t0, linear
// ramps back to zero; continuous except the pi drop at t0.
double bounded_part(const JumpSymbolSpec& spec, double t) {
  const double w = wrap_angle(t);
  const double lo = spec.t0 - spec.delta;
  const double hi = spec.t0 + spec.delta;
  if (w <= lo - spec.taper_width || w >= hi + spec.taper_width) return 0.0;
  if (w < lo) return 0.5 * kPi * (w - (lo - spec.taper_width)) / spec.taper_width;
  if (w <= spec.t0) return 0.5 * kPi;
  if (w <= hi) return -0.5 * kPi;
  return -0.5 * kPi * ((hi + spec.taper_width) - w) / spec.taper_width;
}

}  // namespace

StepSymbol jump_step_symbol(const JumpSymbolSpec& spec) {
  validate(spec);
  return StepSymbol(
      {0.0, spec.t0 - spec.delta, spec.t0, spec.t0 + spec.delta, kTwoPi},
      {0.0, 0.5 * kPi, -0.5 * kPi, 0.0});
}

double jump_taper_part(const JumpSymbolSpec& spec, double t) {
  validate(spec);
  const double w = wrap_angle(t);
  const double lo = spec.t0 - spec.delta;
  const double hi = spec.t0 + spec.delta;
  if (std::abs(w - lo) <= 1e-12 || std::abs(w - hi) <= 1e-12)
    throw AtBreakpointError("jump_taper_part: t at a taper jump");
  if (w > lo - spec.taper_width && w < lo)
    return 0.5 * kPi * (w - (lo - spec.taper_width)) / spec.taper_width;
  if (w > hi && w < hi + spec.taper_width)
    return -0.5 * kPi * ((hi + spec.taper_width) - w) / spec.taper_width;
  return 0.0;  // zero between the taper jumps, the pi drops cancel at t0
}

double jump_symbol(const JumpSymbolSpec& spec, double t, double tol) {
  validate(spec);
  if (circle_distance(t, spec.t0) <= 1e-15)
    throw AtJumpError("jump_symbol: t at the jump t0");
  return bounded_part(spec, t) + 2.0 * loglog_sin_series(t - spec.t0, tol).value;
}

double jump_conjugate(const JumpSymbolSpec& spec, double t, double tol,
                      std::uint64_t effort_cap) {
  validate(spec);
  const double x = circle_distance(t, spec.t0);
  if (x <= 1e-15) throw AtJumpError("jump_conjugate: t at the jump t0");
  const StepSymbol step = jump_step_symbol(spec);
  if (circle_distance(t, spec.t0 - spec.delta) <= 1e-15 ||
      circle_distance(t, spec.t0 + spec.delta) <= 1e-15)
    throw AtBreakpointError("jump_conjugate: t at a taper jump");
  const double step_conj = conjugate_step_exact(step, t);

  // Conjugate of the taper by principal value on a grid shifted so t is
  // exactly midway between nodes, where the cotangent poles cancel.
  const std::size_t n = 1u << 14;
  const double h = kTwoPi / static_cast<double>(n);
  double offset = t / h - 0.5;
  offset -= std::floor(offset);
  if (offset >= 1.0) offset = 0.0;
  const CircleGrid grid(n, offset);
  SampledFn taper{grid, std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const double node = grid.node(j);
    try {
      taper.values[j] = jump_taper_part(spec, node);
    } catch (const AtBreakpointError&) {
      // Node fell on a taper jump; take the midpoint of the two limits.
      const bool at_lo = circle_distance(node, spec.t0 - spec.delta) <= 1e-12;
      taper.values[j] = at_lo ? 0.25 * kPi : -0.25 * kPi;
    }
  }
  const double taper_conj = conjugate_pv(taper, t);

  // Series part when affordable, asymptote deep in the cusp.
  double series_part;
  const double est = series_term_estimate(x, tol);
  if (est <= static_cast<double>(std::min(kSeriesTermCap, effort_cap))) {
    series_part = -2.0 * loglog_cos_series(x, tol).value;
  } else if (x < 1e-4) {
    series_part = -2.0 * asymptote(x);
  } else {
    throw TooExpensiveError("jump_conjugate: series needs about " + fmt(est) +
                            " terms and x is outside the asymptote regime");
  }
  return step_conj + taper_conj + series_part;
}

}  // namespace conjlab
