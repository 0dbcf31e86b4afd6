#pragma once

#include <utility>
#include <vector>

namespace radnorm {

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_max = 0.0;
  /// (log x, log y) pairs the line was fitted to.
  std::vector<std::pair<double, double>> samples;
};

/// Least-squares line through (log x, log y).
///
/// Throws DomainError for fewer than three samples, non-positive
/// coordinates, or when every abscissa is equal.
ExponentFit fit_loglog(const std::vector<std::pair<double, double>>& samples);

}  // namespace radnorm
