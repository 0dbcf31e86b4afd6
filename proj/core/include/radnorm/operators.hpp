#pragma once

#include <complex>

#include "radnorm/disc_function.hpp"
#include "radnorm/exponents.hpp"
#include "radnorm/quadrature.hpp"

namespace radnorm {

/// Weight exponent of the projection; γ > -1 is enforced on construction.
class ProjectionParams {
 public:
  explicit ProjectionParams(double gamma);
  double gamma() const noexcept { return gamma_; }

  /// Whether 1/p < γ + 1, the range in which P_γ is bounded on L^{q,p}.
  bool admissible_for(const ExponentPair& e) const noexcept;

 private:
  double gamma_;
};

/// P_γ f(z) = (γ+1) ∫ (1 - |w|²)^γ f(w) (1 - z conj(w))^{-(2+γ)} dA(w),
/// with dA normalised to give the disc unit mass. Evaluated in polar
/// coordinates, inner angular integral first, on the complex values of f.
ComplexResult bergman_project(const ProjectionParams& gamma, const DiscFunction& f,
                              const DiscPoint& z, const QuadratureConfig& config = {});

/// Throws DomainError unless |z| < 1.
ComplexResult bergman_project(const ProjectionParams& gamma, const DiscFunction& f,
                              std::complex<double> z, const QuadratureConfig& config = {});

/// λ_g(f) = ∫ f conj(g) dA over the disc with normalised area measure.
ComplexResult pairing(const DiscFunction& f, const DiscFunction& g,
                      const QuadratureConfig& config = {});

}  // namespace radnorm
