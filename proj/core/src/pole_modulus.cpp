#include "radnorm/pole_modulus.hpp"

#include <cmath>

namespace radnorm {

double stable_pole_modulus_sq(double delta, double one_minus_r, double theta_offset) noexcept {
  const double radial = delta + one_minus_r;
  const double s = std::sin(0.5 * theta_offset);
  return radial * radial + 4.0 * (1.0 - one_minus_r) * (1.0 + delta) * s * s;
}

double stable_kernel_modulus_sq(double a, double one_minus_r, double theta_offset) noexcept {
  const double radial = (1.0 - a) + a * one_minus_r;
  const double s = std::sin(0.5 * theta_offset);
  return radial * radial + 4.0 * a * (1.0 - one_minus_r) * s * s;
}

}  // namespace radnorm
