#include "radnorm/exponents.hpp"

#include <cmath>
#include <string>

#include "radnorm/errors.hpp"

namespace radnorm {

namespace {

bool valid_exponent(double v) { return std::isfinite(v) && v > 1.0; }

}  // namespace

ExponentPair::ExponentPair(double p, double q) : p_(p), q_(q) {
  if (!valid_exponent(p) || !valid_exponent(q)) {
    throw InvalidExponents("exponents must satisfy 1 < p, q < inf (got p=" +
                           std::to_string(p) + ", q=" + std::to_string(q) + ")");
  }
}

ExponentPair ExponentPair::conjugate() const {
  return ExponentPair(p_ / (p_ - 1.0), q_ / (q_ - 1.0));
}

}  // namespace radnorm
