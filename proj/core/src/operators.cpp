#include "radnorm/operators.hpp"

#include <algorithm>
#include <cmath>

#include "radnorm/errors.hpp"
#include "radnorm/log_integrate.hpp"
#include "radnorm/pole_modulus.hpp"

namespace radnorm {

namespace {

// Outer radial hints shared by both area integrals.
QuadratureHints area_hints(const DiscFunction& f, double extra_scale) {
  QuadratureHints hints;
  double s = f.min_scale();
  if (extra_scale > 0.0) s = s > 0.0 ? std::min(s, extra_scale) : extra_scale;
  if (s > 0.0) hints.poles.push_back({0.0, s, false});
  hints.breakpoints = f.radial_breakpoints();
  return hints;
}

// (1 - ρ e^{-iφ})^{-s} with ρ = |z| r and φ the angle of w measured from arg z.
std::complex<double> kernel_power(double z_abs, double x, double phi, double s) {
  const double rho = z_abs * (1.0 - x);
  const double half = std::sin(0.5 * phi);
  const double re = (1.0 - rho) + 2.0 * rho * half * half;
  const double im = rho * std::sin(phi);
  const std::complex<double> log_w(0.5 * std::log(stable_kernel_modulus_sq(z_abs, x, phi)),
                                   std::atan2(im, re));
  return std::exp(-s * log_w);
}

}  // namespace

ProjectionParams::ProjectionParams(double gamma) : gamma_(gamma) {
  if (!(gamma > -1.0) || !std::isfinite(gamma)) {
    throw DomainError("projection weight requires gamma > -1");
  }
}

bool ProjectionParams::admissible_for(const ExponentPair& e) const noexcept {
  return 1.0 / e.p() < gamma_ + 1.0;
}

ComplexResult bergman_project(const ProjectionParams& params, const DiscFunction& f,
                              const DiscPoint& z, const QuadratureConfig& config) {
  config.validate();
  const double gamma = params.gamma();
  const double s = 2.0 + gamma;
  const double z_abs = z.r();
  const double z_arg = z.anchor() + z.offset();

  double worst_inner = 0.0;
  std::size_t evaluations = 0;
  QuadStatus status = QuadStatus::converged;

  const auto inner = [&](double x) {
    auto features = f.angular_features(x);
    if (z_abs > 0.0) features.push_back({z_arg, (1.0 - z_abs) + z_abs * x, {}});
    const ComplexResult c = integrate_circle_complex(
        [&](double anchor, double offset) {
          const DiscPoint w = DiscPoint::anchored(x, anchor, offset);
          const std::complex<double> fw = f.evaluate(w);
          if (fw == 0.0 || z_abs == 0.0) return fw;
          return fw * kernel_power(z_abs, x, w.angle_from(z_arg), s);
        },
        features, config);
    worst_inner = std::max(worst_inner, c.error_estimate / kTwoPi);
    evaluations += c.evaluations;
    status = combine_status(status, c.status);
    const double r = 1.0 - x;
    const double weight = (gamma + 1.0) * 2.0 * r * std::pow(x * (2.0 - x), gamma);
    return weight * c.value / kTwoPi;
  };

  QuadratureHints hints = area_hints(f, z_abs > 0.0 ? 1.0 - z_abs : 0.0);
  if (gamma < 0.0) hints.poles.push_back({0.0, 1.0, true});
  ComplexResult out = integrate_1d_complex(inner, 0.0, 1.0, config, hints);
  out.error_estimate += worst_inner;
  out.evaluations = evaluations;
  out.status = combine_status(out.status, status);
  return out;
}

ComplexResult bergman_project(const ProjectionParams& params, const DiscFunction& f,
                              std::complex<double> z, const QuadratureConfig& config) {
  const double r = std::abs(z);
  if (!(r < 1.0)) throw DomainError("projection point must satisfy |z| < 1");
  return bergman_project(params, f, DiscPoint::from_radius(r, r > 0.0 ? std::arg(z) : 0.0),
                         config);
}

ComplexResult pairing(const DiscFunction& f, const DiscFunction& g, const QuadratureConfig& config) {
  config.validate();
  double worst_inner = 0.0;
  std::size_t evaluations = 0;
  QuadStatus status = QuadStatus::converged;

  const auto inner = [&](double x) {
    auto features = f.angular_features(x);
    const auto more = g.angular_features(x);
    features.insert(features.end(), more.begin(), more.end());
    const ComplexResult c = integrate_circle_complex(
        [&](double anchor, double offset) {
          const DiscPoint w = DiscPoint::anchored(x, anchor, offset);
          const std::complex<double> fw = f.evaluate(w);
          if (fw == 0.0) return fw;
          return fw * std::conj(g.evaluate(w));
        },
        features, config);
    const double weight = 2.0 * (1.0 - x);
    worst_inner = std::max(worst_inner, weight * c.error_estimate / kTwoPi);
    evaluations += c.evaluations;
    status = combine_status(status, c.status);
    return weight * c.value / kTwoPi;
  };

  QuadratureHints hints = area_hints(f, 0.0);
  const QuadratureHints g_hints = area_hints(g, 0.0);
  hints.poles.insert(hints.poles.end(), g_hints.poles.begin(), g_hints.poles.end());
  hints.breakpoints.insert(hints.breakpoints.end(), g_hints.breakpoints.begin(),
                           g_hints.breakpoints.end());
  ComplexResult out = integrate_1d_complex(inner, 0.0, 1.0, config, hints);
  out.error_estimate += worst_inner;
  out.evaluations = evaluations;
  out.status = combine_status(out.status, status);
  return out;
}

}  // namespace radnorm
