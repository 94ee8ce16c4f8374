#include "conjlab/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "conjlab/errors.hpp"

namespace conjlab {

namespace {

bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double wrap_angle(double t) {
  double w = std::fmod(t, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;  // fmod rounding can land exactly on 2*pi
  return w;
}

double circle_distance(double s, double t) {
  double d = std::abs(wrap_angle(s) - wrap_angle(t));
  return std::min(d, kTwoPi - d);
}

CircleGrid::CircleGrid(std::size_t n, double offset) : n_(n), offset_(offset) {
  if (n == 0) throw DomainError("CircleGrid: n must be positive");
  if (!(offset >= 0.0 && offset < 1.0))
    throw DomainError("CircleGrid: offset must lie in [0, 1), got " + fmt(offset));
}

double CircleGrid::spacing() const { return kTwoPi / static_cast<double>(n_); }

double CircleGrid::node(std::size_t j) const {
  if (j >= n_) throw DomainError("CircleGrid: node index out of range");
  return kTwoPi * (static_cast<double>(j) + offset_) / static_cast<double>(n_);
}

std::vector<double> CircleGrid::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = node(j);
  return out;
}

bool CircleGrid::is_power_of_two() const { return (n_ & (n_ - 1)) == 0; }

TrigPoly::TrigPoly(std::vector<std::complex<double>> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_.size() % 2 == 0)
    throw DomainError("TrigPoly: coefficient count must be odd (2N+1)");
  degree_ = static_cast<int>(coeffs_.size() / 2);
}

TrigPoly TrigPoly::zero(int degree) {
  if (degree < 0) throw DomainError("TrigPoly: negative degree");
  return TrigPoly(std::vector<std::complex<double>>(2 * degree + 1, 0.0));
}

std::complex<double> TrigPoly::coeff(int n) const {
  if (n < -degree_ || n > degree_) return 0.0;
  return coeffs_[static_cast<std::size_t>(n + degree_)];
}

void TrigPoly::set_coeff(int n, std::complex<double> value) {
  if (n < -degree_ || n > degree_)
    throw DomainError("TrigPoly: coefficient index exceeds degree");
  coeffs_[static_cast<std::size_t>(n + degree_)] = value;
}

bool TrigPoly::is_real(double tol) const {
  for (int n = 0; n <= degree_; ++n) {
    if (std::abs(coeff(-n) - std::conj(coeff(n))) > tol * (1.0 + std::abs(coeff(n))))
      return false;
  }
  return true;
}

std::complex<double> TrigPoly::eval(double t) const {
  // Horner in w = e^{it} on the shifted polynomial, then undo the shift.
  const std::complex<double> w = std::polar(1.0, t);
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + *it;
  return acc * std::polar(1.0, -static_cast<double>(degree_) * t);
}

double TrigPoly::eval_real(double t) const {
  if (!is_real(1e-9))
    throw DomainError("TrigPoly: eval_real on a poly without Hermitian coefficients");
  return eval(t).real();
}

ArcSet::ArcSet(std::vector<Arc> arcs) {
  for (const Arc& arc : arcs) {
    if (!(arc.a >= 0.0 && arc.a < arc.b && arc.b <= kTwoPi))
      throw DomainError("ArcSet: arc must satisfy 0 <= a < b <= 2*pi, got [" +
                        fmt(arc.a) + ", " + fmt(arc.b) + "]");
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& l, const Arc& r) { return l.a < r.a; });
  // Merge overlapping or touching arcs into maximal ones.
  for (const Arc& arc : arcs) {
    if (!arcs_.empty() && arc.a <= arcs_.back().b + 1e-15) {
      arcs_.back().b = std::max(arcs_.back().b, arc.b);
    } else {
      arcs_.push_back(arc);
    }
  }
}

double ArcSet::measure() const {
  double m = 0.0;
  for (const Arc& arc : arcs_) m += arc.length();
  return m;
}

bool ArcSet::contains(double t) const {
  const double w = wrap_angle(t);
  for (const Arc& arc : arcs_) {
    if (w >= arc.a && w <= arc.b) return true;
  }
  // 2*pi wraps to 0; an arc ending at the top contains it.
  if (w == 0.0 && !arcs_.empty() && arcs_.back().b == kTwoPi) return true;
  return false;
}

ArcSet ArcSet::rotated(double phi) const {
  std::vector<Arc> out;
  for (const Arc& arc : arcs_) {
    double a = wrap_angle(arc.a + phi);
    double b = a + arc.length();
    if (b <= kTwoPi) {
      out.push_back({a, b});
    } else {
      out.push_back({a, kTwoPi});
      out.push_back({0.0, b - kTwoPi});
    }
  }
  return ArcSet(std::move(out));
}

StepSymbol::StepSymbol(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2)
    throw DomainError("StepSymbol: need at least breakpoints {0, 2*pi}");
  if (values_.size() + 1 != breakpoints_.size())
    throw DomainError("StepSymbol: values must have one entry per arc");
  if (breakpoints_.front() != 0.0)
    throw DomainError("StepSymbol: first breakpoint must be 0");
  if (!near(breakpoints_.back(), kTwoPi))
    throw DomainError("StepSymbol: last breakpoint must be 2*pi");
  breakpoints_.back() = kTwoPi;
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1]))
      throw DomainError("StepSymbol: breakpoints must be strictly increasing");
  }
}

StepSymbol StepSymbol::constant(double c) { return StepSymbol({0.0, kTwoPi}, {c}); }

double StepSymbol::value_at(double t) const {
  const double w = wrap_angle(t);
  const std::vector<double> jumps = jump_heights();
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    if (circle_distance(w, breakpoints_[i]) <= 1e-12 && jumps[i] != 0.0)
      throw AtBreakpointError("StepSymbol: evaluation at jump t = " + fmt(t));
  }
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), w);
  std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
  if (idx == 0) idx = 1;                      // w == 0, continuous there
  if (idx > values_.size()) idx = values_.size();
  return values_[idx - 1];
}

double StepSymbol::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double StepSymbol::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    s += values_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
  return s / kTwoPi;
}

std::vector<double> StepSymbol::jump_heights() const {
  std::vector<double> jumps(values_.size());
  jumps[0] = values_.front() - values_.back();
  for (std::size_t i = 1; i < values_.size(); ++i)
    jumps[i] = values_[i] - values_[i - 1];
  return jumps;
}

double StepSymbol::max_abs_jump() const {
  double m = 0.0;
  for (double j : jump_heights()) m = std::max(m, std::abs(j));
  return m;
}

namespace {

std::vector<double> merged_breakpoints(const StepSymbol& f, const StepSymbol& g) {
  std::vector<double> bp;
  bp.reserve(f.breakpoints().size() + g.breakpoints().size());
  bp.insert(bp.end(), f.breakpoints().begin(), f.breakpoints().end());
  bp.insert(bp.end(), g.breakpoints().begin(), g.breakpoints().end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return near(a, b); }),
           bp.end());
  return bp;
}

StepSymbol from_arcs(const ArcSet& e, double inside, double outside) {
  std::vector<double> bp{0.0, kTwoPi};
  for (const Arc& arc : e.arcs()) {
    bp.push_back(arc.a);
    bp.push_back(arc.b);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  std::vector<double> vals(bp.size() - 1);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double mid = 0.5 * (bp[i] + bp[i + 1]);
    vals[i] = e.contains(mid) ? inside : outside;
  }
  return StepSymbol(std::move(bp), std::move(vals));
}

}  // namespace

StepSymbol rho(const ArcSet& e) { return from_arcs(e, 1.0, -1.0); }

StepSymbol indicator(const ArcSet& e) { return from_arcs(e, 1.0, 0.0); }

StepSymbol scale_symbol(const StepSymbol& f, const StepSymbol& g) {
  std::vector<double> bp = merged_breakpoints(f, g);
  std::vector<double> vals(bp.size() - 1);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double mid = 0.5 * (bp[i] + bp[i + 1]);
    vals[i] = f.value_at(mid) * g.value_at(mid);
  }
  return StepSymbol(std::move(bp), std::move(vals));
}

StepSymbol scale_symbol(double c, const StepSymbol& g) {
  return scale_symbol(StepSymbol::constant(c), g);
}

double essential_range_gap(const StepSymbol& f) {
  std::vector<double> vals = f.values();
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  double gap = 0.0;
  for (std::size_t i = 1; i < vals.size(); ++i)
    gap = std::max(gap, vals[i] - vals[i - 1]);
  return gap;
}

GradedGrid::GradedGrid(std::vector<double> anchors, int depth, double ratio,
                       std::size_t background_n, int nodes_per_level)
    : anchors_(std::move(anchors)), depth_(depth), ratio_(ratio) {
  if (anchors_.empty()) throw DomainError("GradedGrid: need at least one anchor");
  if (depth < 1) throw DomainError("GradedGrid: depth must be >= 1");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw DomainError("GradedGrid: ratio must lie in (0, 1)");
  if (background_n < 2) throw DomainError("GradedGrid: background_n too small");
  if (nodes_per_level < 1) throw DomainError("GradedGrid: nodes_per_level must be >= 1");
  for (double& a : anchors_) a = wrap_angle(a);

  const CircleGrid background(background_n, 0.5);
  nodes_ = background.nodes();
  nodes_.reserve(background_n + anchors_.size() * static_cast<std::size_t>(depth) *
                                    static_cast<std::size_t>(2 * nodes_per_level));
  for (std::size_t ia = 0; ia < anchors_.size(); ++ia) {
    // Cluster radius: stop well before the nearest other anchor.
    double base = 0.5;
    for (std::size_t ib = 0; ib < anchors_.size(); ++ib) {
      if (ib == ia) continue;
      base = std::min(base, 0.25 * circle_distance(anchors_[ia], anchors_[ib]));
    }
    if (base <= 0.0)
      throw DomainError("GradedGrid: coincident anchors");
    for (int k = 0; k < depth; ++k) {
      const double hi = base * std::pow(ratio, k);
      const double lo = hi * ratio;
      for (int j = 0; j < nodes_per_level; ++j) {
        const double s = hi - (hi - lo) * (j + 0.5) / nodes_per_level;
        nodes_.push_back(wrap_angle(anchors_[ia] + s));
        nodes_.push_back(wrap_angle(anchors_[ia] - s));
      }
    }
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());

  // Deep clusters around close anchors can descend below double
  // resolution; drop nodes the evaluators could not distinguish from the
  // anchor itself (their cells are narrower than one ulp anyway).
  nodes_.erase(std::remove_if(nodes_.begin(), nodes_.end(),
                              [this](double t) {
                                for (double a : anchors_)
                                  if (circle_distance(t, a) <= 1e-15) return true;
                                return false;
                              }),
               nodes_.end());

  // Circular midpoint cells; the telescoping sum is exactly 2*pi.
  const std::size_t m = nodes_.size();
  weights_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double prev = (i == 0) ? nodes_[m - 1] - kTwoPi : nodes_[i - 1];
    const double next = (i + 1 == m) ? nodes_[0] + kTwoPi : nodes_[i + 1];
    weights_[i] = 0.5 * (next - prev);
  }
}

std::vector<double> SampledFn::node_angles() const {
  if (std::holds_alternative<CircleGrid>(grid))
    return std::get<CircleGrid>(grid).nodes();
  return std::get<GradedGrid>(grid).nodes();
}

SampledFn sample(const StepSymbol& f, const CircleGrid& grid) {
  SampledFn out{grid, {}};
  out.values.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    try {
      out.values[j] = f.value_at(grid.node(j));
    } catch (const AtBreakpointError&) {
      throw NodeAtJumpError("sample: grid node " + std::to_string(j) +
                            " lies on a jump of the symbol");
    }
  }
  return out;
}

SampledFn sample(const TrigPoly& f, const CircleGrid& grid) {
  SampledFn out{grid, {}};
  out.values.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    out.values[j] = f.eval_real(grid.node(j));
  return out;
}

}  // namespace conjlab
