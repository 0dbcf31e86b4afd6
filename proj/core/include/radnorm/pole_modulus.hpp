#pragma once

namespace radnorm {

/// |1 + δ - r e^{iθ}|² with r = 1 - x, evaluated as
/// (δ + x)² + 4(1 - x)(1 + δ) sin²(θ/2).
///
/// No term subtracts nearly equal quantities, so the result keeps full
/// relative precision for δ and x down to 1e-300.
double stable_pole_modulus_sq(double delta, double one_minus_r, double theta_offset) noexcept;

/// |1 - a r e^{iθ}|² for 0 <= a < 1, r = 1 - x, evaluated as
/// ((1 - a) + a x)² + 4 a (1 - x) sin²(θ/2).
double stable_kernel_modulus_sq(double a, double one_minus_r, double theta_offset) noexcept;

}  // namespace radnorm
