#include "radnorm/kernels.hpp"

#include <cmath>

#include "radnorm/errors.hpp"

namespace radnorm {

DiscFunction test_kernel(const KernelParams& params) {
  return pole_kernel(params.alpha, params.beta);
}

double u_delta_exponent(const ExponentPair& e) { return 1.0 + 1.0 / e.p() + 1.0 / e.q(); }

DiscFunction u_delta(double delta, const ExponentPair& e, double rotation) {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw DomainError("u_delta requires 0 < delta < 1/2");
  }
  return u_delta_log(std::log(delta), e, rotation);
}

DiscFunction u_delta_log(double log_delta, const ExponentPair& e, double rotation) {
  if (!(log_delta < std::log(0.5))) {
    throw DomainError("u_delta requires 0 < delta < 1/2");
  }
  return pole_shift(log_delta, u_delta_exponent(e), rotation);
}

Envelope kernel_envelope(double alpha, double one_minus_r, double theta) {
  if (!(alpha >= 0.5 && alpha < 1.0)) throw DomainError("kernel_envelope requires 1/2 <= alpha < 1");
  if (!(one_minus_r > 0.0 && one_minus_r < 0.5)) {
    throw DomainError("kernel_envelope requires 1/2 < r < 1");
  }
  if (!(theta > 0.0 && theta < 0.5)) throw DomainError("kernel_envelope requires 0 < theta < 1/2");

  const double r = 1.0 - one_minus_r;
  const double radial = (1.0 - alpha) + alpha * one_minus_r;
  double q;
  if (theta < 1.0 - alpha || r * alpha <= 1.0 - theta) {
    q = radial * radial;
  } else {
    q = theta * theta;
  }
  return {q, 0.25 * q, 4.0 * q};
}

}  // namespace radnorm
