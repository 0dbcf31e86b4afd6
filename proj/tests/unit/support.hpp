#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "radnorm/disc.hpp"
#include "radnorm/disc_function.hpp"

namespace radnorm::test {

/// Seeded generator for property tests; each test owns one so that
/// failures reproduce independently of test order.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Log-uniform in [lo, hi].
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  std::complex<double> complex_scalar(double max_abs = 2.0) {
    return std::polar(uniform(0.1, max_abs), uniform(-3.14159, 3.14159));
  }

  DiscPoint point() { return DiscPoint(log_uniform(1e-6, 1.0), uniform(0.0, kTwoPi)); }

  AnnulusArc arc() {
    const double a = log_uniform(1e-4, 1.0);
    const double b = log_uniform(1e-4, 1.0);
    return AnnulusArc(std::min(a, b), std::max(a, b), uniform(0.0, kTwoPi), uniform(1e-3, 3.0));
  }

  DiscFunction polynomial(int max_degree = 6) {
    std::vector<std::complex<double>> c(static_cast<std::size_t>(integer(0, max_degree)) + 1);
    for (auto& v : c) v = complex_scalar();
    return power_series(std::move(c));
  }

  DiscFunction kernel() {
    return pole_kernel(std::polar(uniform(0.0, 0.95), uniform(0.0, kTwoPi)), uniform(0.5, 3.0));
  }

  DiscFunction shift() {
    return pole_shift(std::log(log_uniform(1e-4, 0.4)), uniform(1.0, 3.0), uniform(0.0, kTwoPi));
  }

  /// A random analytic function from the library's building blocks.
  DiscFunction function(int depth = 2) {
    switch (integer(0, depth > 0 ? 4 : 2)) {
      case 0:
        return polynomial();
      case 1:
        return kernel();
      case 2:
        return shift();
      case 3:
        return function(depth - 1) + function(depth - 1);
      default:
        return complex_scalar() * function(depth - 1);
    }
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace radnorm::test
