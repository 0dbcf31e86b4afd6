#pragma once

namespace radnorm {

/// Integrability exponents (p, q) with 1 < p, q < inf.
///
/// `p` is the exponent taken along radii (or the outer radial exponent of
/// the mixed norm), `q` the exponent taken over angles.
class ExponentPair {
 public:
  /// Throws InvalidExponents unless both values are finite and > 1.
  ExponentPair(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  /// 1/p + 1/q, the critical kernel exponent.
  double critical_sum() const noexcept { return 1.0 / p_ + 1.0 / q_; }

  /// Hoelder conjugates (p/(p-1), q/(q-1)).
  ExponentPair conjugate() const;

  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;

 private:
  double p_;
  double q_;
};

inline ExponentPair conjugate(const ExponentPair& e) { return e.conjugate(); }

}  // namespace radnorm
