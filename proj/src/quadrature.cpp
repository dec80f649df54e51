#include "apgap/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace apgap {

double integral_inv_log(double lo, double hi) {
  if (!(lo > 1.0) || hi < lo) throw std::domain_error("integral_inv_log: need 1 < lo <= hi");
  if (hi == lo) return 0.0;
  auto f = [](double t) { return 1.0 / std::log(t); };
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 20, 1e-13, &error);
  if (!(error <= 1e-12 * std::fabs(value))) {
    throw std::runtime_error("integral_inv_log: quadrature did not reach tolerance");
  }
  return value;
}

double log_integral_Y1(double x, u64 q) {
  if (!(x >= 4.0)) throw std::domain_error("log_integral_Y1: need x >= 4");
  if (q == 0) throw std::invalid_argument("log_integral_Y1: q must be positive");
  return integral_inv_log(x / 2.0, x) / static_cast<double>(euler_phi(q));
}

}  // namespace apgap
