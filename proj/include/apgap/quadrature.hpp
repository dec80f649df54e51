// Logarithmic-integral helpers.
#pragma once

#include "apgap/arith.hpp"

namespace apgap {

/// Integral of 1/log t over [lo, hi] by adaptive Gauss-Kronrod, relative
/// error <= 1e-12. Requires 1 < lo <= hi.
double integral_inv_log(double lo, double hi);

/// Y1(x, q) = (1/phi(q)) * integral_{x/2}^{x} dt / log t. Requires x >= 4.
double log_integral_Y1(double x, u64 q);

}  // namespace apgap
