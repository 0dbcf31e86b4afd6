#pragma once

#include <optional>
#include <vector>

#include "radnorm/disc_function.hpp"
#include "radnorm/exponents.hpp"
#include "radnorm/pole_modulus.hpp"
#include "radnorm/quadrature.hpp"

namespace radnorm {

/// A measurable function on the disc as seen by the nested norm evaluators:
/// log|f| plus the structural hints used to place quadrature panels.
class PolarIntegrand {
 public:
  virtual ~PolarIntegrand() = default;

  virtual double log_abs(const DiscPoint& z) const = 0;
  virtual std::vector<AngularFeature> angular_features(std::optional<double> one_minus_r) const = 0;
  /// Hints for ∫ dx along the ray through z, in x = 1 - r.
  virtual QuadratureHints radial_hints(const DiscPoint& z) const = 0;
  /// Hints for the outer ∫ dx of the mixed norm.
  virtual QuadratureHints outer_radial_hints() const = 0;
};

class FunctionIntegrand final : public PolarIntegrand {
 public:
  explicit FunctionIntegrand(DiscFunction f) : f_(std::move(f)) {}

  double log_abs(const DiscPoint& z) const override { return f_.log_abs(z); }
  std::vector<AngularFeature> angular_features(std::optional<double> x) const override {
    return f_.angular_features(x);
  }
  QuadratureHints radial_hints(const DiscPoint& z) const override { return f_.radial_hints(z); }
  QuadratureHints outer_radial_hints() const override;

 private:
  DiscFunction f_;
};

/// ρ_{p,q}(f) = ( ∫ ( ∫_0^1 |f(re^{iθ})|^p dr )^{q/p} dθ/2π )^{1/q}.
///
/// Inner radial integrals run in x = 1 - r with pole hints propagated from
/// the function's structure; everything is accumulated in log space. The
/// error estimate combines the outer estimate with the worst inner relative
/// error to first order.
NormResult rm_norm(const DiscFunction& f, const ExponentPair& e,
                   const QuadratureConfig& config = {});
NormResult rm_norm(const PolarIntegrand& f, const ExponentPair& e,
                   const QuadratureConfig& config = {});

/// ‖f‖_{H^{q,p}} = ( ∫_0^1 ( ∫ |f(re^{iθ})|^q dθ/2π )^{p/q} dr )^{1/p}.
NormResult mixed_norm(const DiscFunction& f, const ExponentPair& e,
                      const QuadratureConfig& config = {});
NormResult mixed_norm(const PolarIntegrand& f, const ExponentPair& e,
                      const QuadratureConfig& config = {});

}  // namespace radnorm
