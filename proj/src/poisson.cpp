#include "conjlab/poisson.hpp"

#include <cmath>
#include <sstream>

#include "conjlab/errors.hpp"

namespace conjlab {

namespace {

constexpr double kBoundaryRadius = 0.9999;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

DiskPoint::DiskPoint(std::complex<double> value) : z(value) {
  if (!(std::abs(z) < 1.0))
    throw DomainError("DiskPoint: |z| must be < 1, got " + fmt(std::abs(z)));
}

DiskPoint::DiskPoint(double r, double theta) : DiskPoint(std::polar(r, theta)) {}

double poisson_kernel(const DiskPoint& z, double t) {
  const std::complex<double> e = std::polar(1.0, t);
  return (1.0 - std::norm(z.z)) / std::norm(e - z.z);
}

std::complex<double> herglotz(const TrigPoly& f, const DiskPoint& z) {
  // X_f(z) = a_0 + 2 sum_{n >= 1} a_n z^n, Horner form.
  std::complex<double> acc = 0.0;
  for (int n = f.degree(); n >= 1; --n) acc = (acc + 2.0 * f.coeff(n)) * z.z;
  return acc + f.coeff(0);
}

std::complex<double> herglotz(const StepSymbol& f, const DiskPoint& z) {
  // For an arc [a, b]:
  //   X(z) = (b - a)/(2 pi) - (i/pi)(Log(1 - z e^{-ib}) - Log(1 - z e^{-ia})).
  // Re(1 - z e^{-i.}) > 0 on the disk, so the principal branch never cuts.
  const std::vector<double>& bp = f.breakpoints();
  const std::vector<double>& vals = f.values();
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double a = bp[i];
    const double b = bp[i + 1];
    const std::complex<double> la = std::log(1.0 - z.z * std::polar(1.0, -a));
    const std::complex<double> lb = std::log(1.0 - z.z * std::polar(1.0, -b));
    acc += vals[i] * ((b - a) / kTwoPi - std::complex<double>(0.0, 1.0 / kPi) * (lb - la));
  }
  return acc;
}

std::complex<double> herglotz(const SampledFn& f, const DiskPoint& z) {
  const double r = z.radius();
  const std::size_t n = f.size();
  if (r > kBoundaryRadius ||
      static_cast<double>(n) < 64.0 / (1.0 - r))
    throw TooCloseToBoundaryError(
        "herglotz: |z| = " + fmt(r) + " needs more than " + std::to_string(n) +
        " samples");
  const std::vector<double> nodes = f.node_angles();
  std::vector<double> weights;
  if (std::holds_alternative<GradedGrid>(f.grid)) {
    weights = std::get<GradedGrid>(f.grid).weights();
  } else {
    weights.assign(n, kTwoPi / static_cast<double>(n));
  }
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> e = std::polar(1.0, nodes[j]);
    acc += weights[j] * f.values[j] * (e + z.z) / (e - z.z);
  }
  return acc / kTwoPi;
}

double poisson_extend(const TrigPoly& f, const DiskPoint& z) {
  if (!f.is_real(1e-9))
    throw DomainError("poisson_extend: symbol must be real valued");
  return herglotz(f, z).real();
}

double poisson_extend(const StepSymbol& f, const DiskPoint& z) {
  return herglotz(f, z).real();
}

double poisson_extend(const SampledFn& f, const DiskPoint& z) {
  return herglotz(f, z).real();
}

std::vector<std::complex<double>> radial_probe(const StepSymbol& f, double theta,
                                               const std::vector<double>& radii) {
  std::vector<std::complex<double>> out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(herglotz(f, DiskPoint(r, theta)));
  return out;
}

std::complex<double> outer_eval(const StepSymbol& f, const DiskPoint& z, int power) {
  if (power != 1 && power != -1)
    throw DomainError("outer_eval: power must be +1 or -1");
  const std::complex<double> x = herglotz(f, z);
  return std::exp(std::complex<double>(0.0, 0.5 * power) * x);
}

HardyGrowthCurve hardy_growth(const StepSymbol& f, double p,
                              const std::vector<double>& radii) {
  if (!(p > 0.0)) throw DomainError("hardy_growth: p must be positive");
  HardyGrowthCurve curve;
  curve.p = p;
  curve.radii = radii;
  curve.means.reserve(radii.size());
  for (double r : radii) {
    // Closed-form kernel, so the only limit is the node count ~1/(1-r).
    if (!(r >= 0.0 && r <= 1.0 - 1e-5))
      throw TooCloseToBoundaryError("hardy_growth: radius " + fmt(r) +
                                    " outside [0, 1 - 1e-5]");
    const std::size_t n = static_cast<std::size_t>(
        std::max(8192.0, 2.0 * std::ceil(64.0 / (1.0 - r))));
    const CircleGrid grid(n, 0.5);
    // |Phi_f|^p = exp(-p u~ / 2) with u~ = Im X_f.
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ut = herglotz(f, DiskPoint(r, grid.node(j))).imag();
      acc += std::exp(-0.5 * p * ut);
    }
    curve.means.push_back(acc / static_cast<double>(n));
  }
  return curve;
}

}  // namespace conjlab
