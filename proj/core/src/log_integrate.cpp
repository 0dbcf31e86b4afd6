#include "radnorm/log_integrate.hpp"

#include <algorithm>
#include <cmath>

#include "radnorm/disc.hpp"

namespace radnorm {

QuadStatus combine_status(QuadStatus a, QuadStatus b) noexcept {
  auto rank = [](QuadStatus s) {
    switch (s) {
      case QuadStatus::converged:
        return 0;
      case QuadStatus::no_convergence:
        return 1;
      case QuadStatus::diverged:
        return 2;
    }
    return 2;
  };
  return rank(a) >= rank(b) ? a : b;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kRescaleMargin = 300.0;

double probe_shift(const std::function<double(double)>& h, double a, double b,
                   const QuadratureHints& hints) {
  double best = kNegInf;
  auto probe = [&](double t) {
    if (!(t > a && t < b)) return;
    const double v = h(t);
    if (v > best) best = v;
  };
  probe(a + 0.5 * (b - a));
  for (const auto& pole : hints.poles) {
    const double inset = std::min(pole.scale, 0.5 * (b - a)) * 1e-3;
    if (pole.location <= a) probe(a + inset);
    if (pole.location >= b) probe(b - inset);
  }
  return std::isfinite(best) ? best : 0.0;
}

struct Arc {
  double anchor;
  double lo;
  double hi;
};

struct MergedFeature {
  double center;
  double scale;
  std::vector<double> breakpoints;
};

std::vector<MergedFeature> merge_features(const std::vector<AngularFeature>& features) {
  std::vector<MergedFeature> merged;
  for (const auto& f : features) {
    if (!std::isfinite(f.center)) continue;
    const double c = normalize_angle(f.center);
    auto it = std::find_if(merged.begin(), merged.end(),
                           [c](const MergedFeature& m) { return m.center == c; });
    if (it == merged.end()) {
      merged.push_back({c, 0.0, {}});
      it = std::prev(merged.end());
    }
    if (f.scale > 0.0 && (it->scale == 0.0 || f.scale < it->scale)) it->scale = f.scale;
    it->breakpoints.insert(it->breakpoints.end(), f.breakpoints.begin(), f.breakpoints.end());
  }
  std::sort(merged.begin(), merged.end(),
            [](const MergedFeature& x, const MergedFeature& y) { return x.center < y.center; });
  return merged;
}

std::vector<Arc> build_arcs(const std::vector<MergedFeature>& merged) {
  std::vector<Arc> arcs;
  if (merged.empty()) {
    arcs.push_back({0.0, 0.0, kTwoPi});
    return arcs;
  }
  const std::size_t k = merged.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double c = merged[i].center;
    const double next = i + 1 < k ? merged[i + 1].center : merged[0].center + kTwoPi;
    const double half = 0.5 * (next - c);
    arcs.push_back({c, 0.0, half});
    arcs.push_back({merged[(i + 1) % k].center, -half, 0.0});
  }
  return arcs;
}

QuadratureHints arc_hints(const Arc& arc, const std::vector<MergedFeature>& merged) {
  QuadratureHints hints;
  if (merged.empty()) {
    hints.breakpoints = {0.5 * std::numbers::pi, std::numbers::pi, 1.5 * std::numbers::pi};
    return hints;
  }
  for (const auto& f : merged) {
    const double rel = f.center == arc.anchor ? 0.0 : wrap_angle(f.center - arc.anchor);
    if (f.scale > 0.0) hints.poles.push_back({rel, f.scale, false});
    for (double b : f.breakpoints) {
      const double t = rel + b;
      if (t > arc.lo && t < arc.hi) hints.breakpoints.push_back(t);
    }
  }
  return hints;
}

}  // namespace

LogEstimate integrate_exp_1d(const std::function<double(double)>& h, double a, double b,
                             const QuadratureConfig& config, const QuadratureHints& hints,
                             std::size_t fixed_nodes) {
  QuadratureConfig cfg = config;
  cfg.abs_tol = std::numeric_limits<double>::min();

  LogEstimate out;
  double shift = probe_shift(h, a, b, hints);
  out.evaluations += 1 + 2 * hints.poles.size();
  for (int attempt = 0; attempt < 4; ++attempt) {
    double max_seen = kNegInf;
    const auto scaled = [&](double t) {
      const double v = h(t);
      if (v > max_seen) max_seen = v;
      return v == kNegInf ? 0.0 : std::exp(v - shift);
    };
    const NormResult r = fixed_nodes > 0 ? integrate_1d_fixed(scaled, a, b, fixed_nodes, hints)
                                         : integrate_1d(scaled, a, b, cfg, hints);
    out.evaluations += r.evaluations;
    if (max_seen > shift + kRescaleMargin && attempt < 3) {
      shift = max_seen;
      continue;
    }
    out.status = r.status;
    if (r.value > 0.0) {
      out.log_value = shift + std::log(r.value);
      out.rel_error = r.error_estimate / r.value;
    } else {
      out.log_value = kNegInf;
      out.rel_error = r.error_estimate > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      if (r.error_estimate == 0.0 && r.status != QuadStatus::diverged) {
        out.status = QuadStatus::converged;
      }
    }
    break;
  }
  return out;
}

LogEstimate integrate_exp_circle(const AnchoredLogIntegrand& h,
                                 const std::vector<AngularFeature>& features,
                                 const QuadratureConfig& config, std::size_t fixed_nodes) {
  const auto merged = merge_features(features);
  const auto arcs = build_arcs(merged);

  std::vector<LogEstimate> parts;
  parts.reserve(arcs.size());
  LogEstimate out;
  out.evaluations = 0;
  double top = kNegInf;
  for (const auto& arc : arcs) {
    const auto hints = arc_hints(arc, merged);
    const double anchor = arc.anchor;
    auto part = integrate_exp_1d([&h, anchor](double t) { return h(anchor, t); }, arc.lo,
                                 arc.hi, config, hints, fixed_nodes);
    out.evaluations += part.evaluations;
    out.status = combine_status(out.status, part.status);
    top = std::max(top, part.log_value);
    parts.push_back(part);
  }
  if (top == kNegInf) {
    out.log_value = kNegInf;
    out.rel_error = 0.0;
    return out;
  }
  double total = 0.0;
  double error = 0.0;
  for (const auto& part : parts) {
    if (part.log_value == kNegInf) continue;
    const double w = std::exp(part.log_value - top);
    total += w;
    error += w * part.rel_error;
  }
  out.log_value = top + std::log(total);
  out.rel_error = error / total;
  return out;
}

ComplexResult integrate_circle_complex(const AnchoredComplexIntegrand& g,
                                       const std::vector<AngularFeature>& features,
                                       const QuadratureConfig& config) {
  const auto merged = merge_features(features);
  const auto arcs = build_arcs(merged);
  ComplexResult out;
  for (const auto& arc : arcs) {
    const auto hints = arc_hints(arc, merged);
    const double anchor = arc.anchor;
    const auto part = integrate_1d_complex([&g, anchor](double t) { return g(anchor, t); },
                                           arc.lo, arc.hi, config, hints);
    out.value += part.value;
    out.error_estimate += part.error_estimate;
    out.evaluations += part.evaluations;
    out.status = combine_status(out.status, part.status);
  }
  return out;
}

}  // namespace radnorm
