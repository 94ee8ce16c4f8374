#pragma once

#include <complex>

#include "conjlab/circle.hpp"

namespace conjlab {

// Point x + iy of the open vertical strip |x| < pi/2.
struct StripPoint {
  double x;
  double y;
  StripPoint(double x, double y);
  std::complex<double> value() const { return {x, y}; }
};

// Conformal map F(tau) = tan(tau/2) from the strip onto the unit disk;
// F(0) = 0, F(iy) = i tanh(y/2).
std::complex<double> strip_to_disk(const StripPoint& tau);

// Inverse map 2 atan(w); DomainError for |w| >= 1.
StripPoint disk_to_strip(std::complex<double> w);

// Harmonic measure of the boundary part above height lambda + 2:
//   g_lambda(x + iy) = (1/pi) atan(cos x / sinh(lambda + 2 - y)),  y < lambda + 2
//                    = 1 - (1/pi) atan(cos x / sinh(y - lambda - 2)), y > lambda + 2
//                    = 1/2 on the level line.
// Bounded in [0, 1], harmonic, boundary values the indicator of
// {|x| = pi/2, y > lambda + 2}. Requires lambda >= 0.
double g_lambda(const StripPoint& tau, double lambda);

// Same function through the vertical shift g_lambda(tau) = g_0(tau - i*lambda);
// provided as an independent identity check.
double g_lambda_shifted(const StripPoint& tau, double lambda);

// Elementary lower bound (1/pi) cos(x) e^{-(lambda + 2 - y)}, valid when
// lambda + 2 - y >= 1.
double g_lambda_lower_bound(const StripPoint& tau, double lambda);

}  // namespace conjlab
