#include "radnorm/fit.hpp"

#include <algorithm>
#include <cmath>

#include "radnorm/errors.hpp"

namespace radnorm {

ExponentFit fit_loglog(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) throw DomainError("fit_loglog needs at least three samples");
  ExponentFit fit;
  fit.samples.reserve(samples.size());
  for (const auto& [x, y] : samples) {
    if (!(x > 0.0 && y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw DomainError("fit_loglog needs finite positive samples");
    }
    fit.samples.emplace_back(std::log(x), std::log(y));
  }

  const double n = static_cast<double>(fit.samples.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [lx, ly] : fit.samples) {
    mx += lx;
    my += ly;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [lx, ly] : fit.samples) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_loglog is degenerate: all abscissae are equal");

  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& [lx, ly] : fit.samples) {
    fit.residual_max = std::max(fit.residual_max, std::abs(ly - (fit.intercept + fit.slope * lx)));
  }
  return fit;
}

}  // namespace radnorm
