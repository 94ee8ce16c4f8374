#include "conjlab/strip.hpp"

#include <cmath>
#include <sstream>

#include "conjlab/errors.hpp"

namespace conjlab {

namespace {

// sinh overflows past ~710; the harmonic measure is 0 or 1 to double
// precision well before that.
constexpr double kSinhGuard = 700.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

StripPoint::StripPoint(double x_, double y_) : x(x_), y(y_) {
  if (!(std::abs(x) < 0.5 * kPi))
    throw DomainError("StripPoint: |x| must be < pi/2, got x = " + fmt(x));
}

std::complex<double> strip_to_disk(const StripPoint& tau) {
  return std::tan(0.5 * tau.value());
}

StripPoint disk_to_strip(std::complex<double> w) {
  if (!(std::abs(w) < 1.0))
    throw DomainError("disk_to_strip: |w| must be < 1");
  const std::complex<double> tau = 2.0 * std::atan(w);
  return StripPoint(tau.real(), tau.imag());
}

double g_lambda(const StripPoint& tau, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("g_lambda: lambda must be >= 0");
  const double s = lambda + 2.0 - tau.y;
  if (s > kSinhGuard) return 0.0;
  if (s < -kSinhGuard) return 1.0;
  if (s == 0.0) return 0.5;
  const double c = std::cos(tau.x);
  if (s > 0.0) return std::atan(c / std::sinh(s)) / kPi;
  return 1.0 - std::atan(c / std::sinh(-s)) / kPi;
}

double g_lambda_shifted(const StripPoint& tau, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("g_lambda_shifted: lambda must be >= 0");
  return g_lambda(StripPoint(tau.x, tau.y - lambda), 0.0);
}

double g_lambda_lower_bound(const StripPoint& tau, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("g_lambda_lower_bound: lambda must be >= 0");
  const double s = lambda + 2.0 - tau.y;
  if (!(s >= 1.0))
    throw DomainError("g_lambda_lower_bound: valid only for lambda + 2 - y >= 1");
  // sinh s <= e^s / 2 and atan t >= t/2 on [0, 1] give
  // g >= (1/pi) cos(x) e^{-s}.
  return std::cos(tau.x) * std::exp(-s) / kPi;
}

}  // namespace conjlab
