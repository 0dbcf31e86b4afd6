#include "radnorm/norms.hpp"

#include <algorithm>
#include <cmath>

#include "radnorm/log_integrate.hpp"

namespace radnorm {

namespace {

const double kLogTwoPi = std::log(kTwoPi);

// Tracks the worst inner integral seen by an outer quadrature.
struct InnerStats {
  double max_rel = 0.0;
  std::size_t evaluations = 0;
  QuadStatus status = QuadStatus::converged;

  void record(const LogEstimate& e) {
    if (std::isfinite(e.rel_error)) max_rel = std::max(max_rel, e.rel_error);
    evaluations += e.evaluations;
    status = combine_status(status, e.status);
  }
};

NormResult finish(const LogEstimate& outer, const InnerStats& inner, double log_norm,
                  double inner_weight, double root) {
  NormResult r;
  r.value = std::exp(log_norm);
  const double rel = (outer.rel_error + inner_weight * inner.max_rel) / root;
  r.error_estimate = r.value * rel;
  r.evaluations = inner.evaluations;
  r.status = combine_status(outer.status, inner.status);
  return r;
}

// Retries a non-converged outer integral with the fixed composite rule and
// keeps whichever estimate claims the smaller error.
template <class Run>
LogEstimate outer_with_fallback(const Run& run, InnerStats& stats, const QuadratureConfig& cfg) {
  InnerStats adaptive_stats;
  LogEstimate best = run(adaptive_stats, 0);
  if (best.status == QuadStatus::no_convergence) {
    InnerStats fixed_stats;
    LogEstimate fixed = run(fixed_stats, cfg.outer_samples);
    if (fixed.status != QuadStatus::diverged && fixed.rel_error < best.rel_error) {
      fixed.status = QuadStatus::no_convergence;
      fixed.evaluations += best.evaluations;
      fixed_stats.evaluations += adaptive_stats.evaluations;
      stats = fixed_stats;
      return fixed;
    }
  }
  stats = adaptive_stats;
  return best;
}

}  // namespace

QuadratureHints FunctionIntegrand::outer_radial_hints() const {
  QuadratureHints hints;
  const double s = f_.min_scale();
  if (s > 0.0) hints.poles.push_back({0.0, s, false});
  hints.breakpoints = f_.radial_breakpoints();
  return hints;
}

NormResult rm_norm(const PolarIntegrand& f, const ExponentPair& e,
                   const QuadratureConfig& config) {
  config.validate();
  const double p = e.p();
  const double q = e.q();

  auto run = [&](InnerStats& stats, std::size_t fixed_nodes) {
    const AnchoredLogIntegrand inner = [&](double anchor, double offset) {
      const auto hints = f.radial_hints(DiscPoint::anchored(1.0, anchor, offset));
      const LogEstimate est = integrate_exp_1d(
          [&](double x) { return p * f.log_abs(DiscPoint::anchored(x, anchor, offset)); }, 0.0,
          1.0, config, hints);
      stats.record(est);
      return (q / p) * est.log_value;
    };
    return integrate_exp_circle(inner, f.angular_features(std::nullopt), config, fixed_nodes);
  };

  InnerStats stats;
  const LogEstimate outer = outer_with_fallback(run, stats, config);
  const double log_norm = (outer.log_value - kLogTwoPi) / q;
  return finish(outer, stats, log_norm, q / p, q);
}

NormResult mixed_norm(const PolarIntegrand& f, const ExponentPair& e,
                      const QuadratureConfig& config) {
  config.validate();
  const double p = e.p();
  const double q = e.q();

  auto run = [&](InnerStats& stats, std::size_t fixed_nodes) {
    const auto inner = [&](double x) {
      const LogEstimate est = integrate_exp_circle(
          [&](double anchor, double offset) {
            return q * f.log_abs(DiscPoint::anchored(x, anchor, offset));
          },
          f.angular_features(x), config);
      stats.record(est);
      return (p / q) * (est.log_value - kLogTwoPi);
    };
    return integrate_exp_1d(inner, 0.0, 1.0, config, f.outer_radial_hints(), fixed_nodes);
  };

  InnerStats stats;
  const LogEstimate outer = outer_with_fallback(run, stats, config);
  const double log_norm = outer.log_value / p;
  return finish(outer, stats, log_norm, p / q, p);
}

NormResult rm_norm(const DiscFunction& f, const ExponentPair& e, const QuadratureConfig& config) {
  return rm_norm(FunctionIntegrand(f), e, config);
}

NormResult mixed_norm(const DiscFunction& f, const ExponentPair& e,
                      const QuadratureConfig& config) {
  return mixed_norm(FunctionIntegrand(f), e, config);
}

}  // namespace radnorm
