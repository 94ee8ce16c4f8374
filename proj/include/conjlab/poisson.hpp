#pragma once

#include <complex>
#include <vector>

#include "conjlab/circle.hpp"

namespace conjlab {

// Point of the open unit disk; the constructor rejects |z| >= 1.
struct DiskPoint {
  std::complex<double> z;
  explicit DiskPoint(std::complex<double> value);
  explicit DiskPoint(double r, double theta);
  double radius() const { return std::abs(z); }
};

// P_z(t) = (1 - |z|^2) / |e^{it} - z|^2, positive, mean one.
double poisson_kernel(const DiskPoint& z, double t);

// Herglotz transform X_f(z) = (1/2pi) int (e^{it} + z)/(e^{it} - z) f(t) dt.
// Re X_f is the harmonic extension of f, Im X_f the extension of the
// conjugate, X_f(0) is the mean.
std::complex<double> herglotz(const TrigPoly& f, const DiskPoint& z);
std::complex<double> herglotz(const StepSymbol& f, const DiskPoint& z);

// Quadrature fallback for sampled boundary data. Guard: |z| <= 0.9999 and
// n >= 64/(1 - |z|), otherwise TooCloseToBoundaryError.
std::complex<double> herglotz(const SampledFn& f, const DiskPoint& z);

double poisson_extend(const TrigPoly& f, const DiskPoint& z);
double poisson_extend(const StepSymbol& f, const DiskPoint& z);
double poisson_extend(const SampledFn& f, const DiskPoint& z);

// X_f along the radius toward e^{i theta}.
std::vector<std::complex<double>> radial_probe(const StepSymbol& f,
                                               double theta,
                                               const std::vector<double>& radii);

// Zero-free analytic function Phi_f(z)^power with Phi_f = exp(i X_f / 2);
// |Phi_f| = exp(-u~/2) where u~ extends the conjugate of f.
std::complex<double> outer_eval(const StepSymbol& f, const DiskPoint& z,
                                int power = 1);

struct HardyGrowthCurve {
  double p = 2.0;
  std::vector<double> radii;
  std::vector<double> means;  // mean_p(r) = (1/2pi) int |Phi_f(re^{it})|^p dt
};

// Trapezoid means on circles |z| = r with n = max(8192, 2*ceil(64/(1-r)))
// half-offset nodes. Radii must lie in [0, 1 - 1e-5].
HardyGrowthCurve hardy_growth(const StepSymbol& f, double p,
                              const std::vector<double>& radii);

}  // namespace conjlab
