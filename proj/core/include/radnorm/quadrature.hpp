#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace radnorm {

enum class QuadStatus {
  converged,
  /// Panel budget exhausted with the error above tolerance; value still usable.
  no_convergence,
  /// Estimates grew without bound under refinement. The value is the
  /// partial sum accumulated so far, a lower bound for nonnegative integrands.
  diverged,
};

const char* to_string(QuadStatus s) noexcept;

/// Integral or norm value with an a posteriori error estimate.
template <class T>
struct BasicResult {
  T value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  QuadStatus status = QuadStatus::converged;

  bool converged() const noexcept { return status == QuadStatus::converged; }
  bool diverged() const noexcept { return status == QuadStatus::diverged; }
};

using NormResult = BasicResult<double>;
using ComplexResult = BasicResult<std::complex<double>>;

/// Known near-singularity of an integrand.
///
/// A segment adjacent to `location` is integrated in the stretched variable
/// u with t = location ± scale·(e^u - 1), which resolves features of width
/// `scale` next to the pole and grows logarithmically away from it. A
/// `singular` hint marks a genuine endpoint singularity at `location`; the
/// integrand is never evaluated there and divergence is detected.
struct PoleHint {
  double location = 0.0;
  double scale = 1.0;
  bool singular = false;
};

struct QuadratureHints {
  std::vector<PoleHint> poles;
  /// Points where the integrand may be discontinuous (mask edges).
  std::vector<double> breakpoints;
};

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  std::size_t max_panels = 4096;
  /// Node count of the fixed composite rule used when the adaptive outer
  /// integral of a nested norm fails to converge.
  std::size_t outer_samples = 512;
  std::vector<PoleHint> pole_hints;

  /// Throws DomainError unless rel_tol, abs_tol > 0 and max_panels >= 8.
  void validate() const;
};

/// Structure of an integrand around the circle: a centre angle, the angular
/// scale of a peak centred there (0 when there is none) and discontinuities
/// given as offsets from the centre.
struct AngularFeature {
  double center = 0.0;
  double scale = 0.0;
  std::vector<double> breakpoints;
};

using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Adaptive Gauss–Kronrod (7/15) integration of g over [a, b].
///
/// Panels are refined largest-error first until the summed error estimate
/// falls below max(abs_tol, rel_tol·|I|) or `max_panels` is reached. Hints
/// from the argument and from `config.pole_hints` are merged. The result is
/// bit-reproducible for identical inputs.
NormResult integrate_1d(const RealIntegrand& g, double a, double b,
                        const QuadratureConfig& config = {},
                        const QuadratureHints& hints = {});

ComplexResult integrate_1d_complex(const ComplexIntegrand& g, double a, double b,
                                   const QuadratureConfig& config = {},
                                   const QuadratureHints& hints = {});

/// Non-adaptive composite Gauss–Kronrod rule with about `nodes` evaluations
/// spread over the same hint-adapted segments the adaptive rule would use.
/// The error estimate is the sum of the per-panel Kronrod/Gauss differences.
NormResult integrate_1d_fixed(const RealIntegrand& g, double a, double b,
                              std::size_t nodes, const QuadratureHints& hints = {});

}  // namespace radnorm
