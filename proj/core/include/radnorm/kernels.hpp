#pragma once

#include <complex>

#include "radnorm/disc_function.hpp"
#include "radnorm/exponents.hpp"

namespace radnorm {

struct KernelParams {
  std::complex<double> alpha;
  double beta;
};

/// (1 - conj(α) z)^(-β) on the principal branch.
DiscFunction test_kernel(const KernelParams& params);

/// Exponent 1 + 1/p + 1/q of the normalised pole u_δ.
double u_delta_exponent(const ExponentPair& e);

/// u_δ(z e^{-iφ}) with u_δ(z) = δ / (1 + δ - z)^(1 + 1/p + 1/q).
/// Throws DomainError unless 0 < δ < 1/2.
DiscFunction u_delta(double delta, const ExponentPair& e, double rotation = 0.0);

/// Same as `u_delta` with δ supplied as log δ, for δ below double range
/// of its reciprocal powers.
DiscFunction u_delta_log(double log_delta, const ExponentPair& e, double rotation = 0.0);

struct Envelope {
  double quantity;  ///< piecewise comparison quantity Q
  double lower;     ///< Q / 4
  double upper;     ///< 4 Q
};

/// Piecewise comparison for |1 - α r e^{iθ}|² on 1/2 ≤ α < 1, 1/2 < r < 1,
/// 0 < θ < 1/2, with r = 1 - one_minus_r. Q = (1 - rα)² when θ < 1 - α or
/// r ≤ (1 - θ)/α, and Q = θ² otherwise.
Envelope kernel_envelope(double alpha, double one_minus_r, double theta);

}  // namespace radnorm
