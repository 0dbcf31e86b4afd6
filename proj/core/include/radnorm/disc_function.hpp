#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "radnorm/disc.hpp"
#include "radnorm/quadrature.hpp"

namespace radnorm {

namespace fn {
struct PowerSeries;
struct PoleKernel;
struct PoleShift;
struct BiMonomial;
struct Sum;
struct Scale;
struct Masked;
}  // namespace fn

/// Modulus and argument of a function value, with the modulus in log form
/// so that values beyond double range can be represented.
struct PolarValue {
  double log_abs;
  double arg;

  std::complex<double> to_complex() const;
};

enum class MaskSide { inside, outside };

/// An immutable, cheaply copyable function on the unit disc.
///
/// Values are built from the factories below and combined with `+`, scalar
/// `*` and `rotate`. Masked and conjugate-monomial nodes are measurable but
/// not analytic; the norm evaluators accept them, `is_analytic()` reports
/// which kind a tree is.
class DiscFunction {
 public:
  using Node = std::variant<fn::PowerSeries, fn::PoleKernel, fn::PoleShift, fn::BiMonomial,
                            fn::Sum, fn::Scale, fn::Masked>;

  explicit DiscFunction(Node node);

  const Node& node() const noexcept;

  std::complex<double> evaluate(const DiscPoint& z) const;
  PolarValue evaluate_polar(const DiscPoint& z) const;
  double log_abs(const DiscPoint& z) const { return evaluate_polar(z).log_abs; }

  bool is_analytic() const;

  /// Peak centres, peak scales and mask edges around the circle. With a
  /// radius given, scales describe the circle 1 - r = one_minus_r and only
  /// masks covering that radius contribute edges.
  std::vector<AngularFeature> angular_features(std::optional<double> one_minus_r = {}) const;

  /// Hints for the radial integral in x = 1 - r along the ray through `z`.
  QuadratureHints radial_hints(const DiscPoint& z) const;

  /// Mask edges in x = 1 - r, independent of angle.
  std::vector<double> radial_breakpoints() const;

  /// Smallest peak scale over all features, 0 when there is none.
  double min_scale() const;

 private:
  std::shared_ptr<const Node> node_;
};

namespace fn {

/// Σ c_k z^k.
struct PowerSeries {
  std::vector<std::complex<double>> coefficients;
};

/// (1 - conj(α) z)^(-β) on the principal branch, α = modulus·e^{i·angle}.
struct PoleKernel {
  double modulus;
  double angle;
  double beta;
};

/// δ·(1 + δ - z e^{-i·rotation})^(-exponent), with δ stored as log δ.
struct PoleShift {
  double log_delta;
  double exponent;
  double rotation;
};

/// z^j · conj(z)^k.
struct BiMonomial {
  int analytic_degree;
  int conjugate_degree;
};

struct Sum {
  std::vector<DiscFunction> terms;
};

struct Scale {
  std::complex<double> factor;
  DiscFunction inner;
};

struct Masked {
  DiscFunction inner;
  AnnulusArc region;
  MaskSide side;
};

}  // namespace fn

DiscFunction power_series(std::vector<std::complex<double>> coefficients);
DiscFunction constant(std::complex<double> c);
DiscFunction monomial(int degree);
/// Throws DomainError unless |α| < 1 and β > 0.
DiscFunction pole_kernel(std::complex<double> alpha, double beta);
/// Throws DomainError unless δ > 0 and exponent > 0.
DiscFunction pole_shift(double log_delta, double exponent, double rotation);
DiscFunction bimonomial(int analytic_degree, int conjugate_degree);
DiscFunction sum(std::vector<DiscFunction> terms);
DiscFunction scale(std::complex<double> factor, DiscFunction f);
DiscFunction masked(DiscFunction f, AnnulusArc region, MaskSide side);

/// g(z) = f(z e^{-iφ}).
DiscFunction rotate(const DiscFunction& f, double phi);

DiscFunction operator+(const DiscFunction& a, const DiscFunction& b);
DiscFunction operator*(std::complex<double> c, const DiscFunction& f);

inline double evaluate_abs(const DiscFunction& f, const DiscPoint& z) {
  return std::exp(f.log_abs(z));
}

}  // namespace radnorm
