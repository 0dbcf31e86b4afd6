#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "radnorm/quadrature.hpp"

namespace radnorm {

/// Integral of a nonnegative integrand reported in log space.
struct LogEstimate {
  double log_value = -std::numeric_limits<double>::infinity();
  /// Estimated relative error of exp(log_value).
  double rel_error = 0.0;
  std::size_t evaluations = 0;
  QuadStatus status = QuadStatus::converged;
};

/// ∫_a^b exp(h(t)) dt for integrands whose magnitude may leave double range.
///
/// The integrand is rescaled by exp(-S) where S tracks the largest log value
/// seen; a pass whose maximum exceeds the shift by more than 300 is redone
/// with the larger shift. The tolerance is purely relative. A nonzero
/// `fixed_nodes` selects the non-adaptive composite rule instead.
LogEstimate integrate_exp_1d(const std::function<double(double)>& h, double a, double b,
                             const QuadratureConfig& config, const QuadratureHints& hints,
                             std::size_t fixed_nodes = 0);

/// Integrand over the circle evaluated at angle anchor + offset.
using AnchoredLogIntegrand = std::function<double(double anchor, double offset)>;
using AnchoredComplexIntegrand = std::function<std::complex<double>(double anchor, double offset)>;

/// ∫_0^{2π} exp(h(θ)) dθ (not normalised).
///
/// The circle is cut midway between consecutive feature centres; each half
/// arc is integrated in the offset from its own centre, with the centre's
/// peak scale as a pole hint and mask edges as breakpoints.
LogEstimate integrate_exp_circle(const AnchoredLogIntegrand& h,
                                 const std::vector<AngularFeature>& features,
                                 const QuadratureConfig& config, std::size_t fixed_nodes = 0);

/// ∫_0^{2π} g(θ) dθ for a complex integrand, cut into arcs the same way.
ComplexResult integrate_circle_complex(const AnchoredComplexIntegrand& g,
                                       const std::vector<AngularFeature>& features,
                                       const QuadratureConfig& config);

/// Worst of two statuses (diverged > no_convergence > converged).
QuadStatus combine_status(QuadStatus a, QuadStatus b) noexcept;

}  // namespace radnorm
