#pragma once

#include <random>

#include "conjlab/circle.hpp"

namespace conjlab {

// Real-valued random trigonometric polynomial with mean-zero option;
// coefficients are Hermitian by construction.
TrigPoly random_real_trigpoly(std::mt19937& rng, int degree,
                              bool zero_mean = false);

}  // namespace conjlab
