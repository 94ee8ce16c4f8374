#include "conjlab/testing.hpp"

namespace conjlab {

TrigPoly random_real_trigpoly(std::mt19937& rng, int degree, bool zero_mean) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TrigPoly f = TrigPoly::zero(degree);
  if (!zero_mean) f.set_coeff(0, unit(rng));
  for (int n = 1; n <= degree; ++n) {
    const std::complex<double> a(unit(rng), unit(rng));
    f.set_coeff(n, a);
    f.set_coeff(-n, std::conj(a));
  }
  return f;
}

}  // namespace conjlab
