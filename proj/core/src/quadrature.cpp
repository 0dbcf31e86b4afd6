#include "radnorm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "radnorm/errors.hpp"

namespace radnorm {

const char* to_string(QuadStatus s) noexcept {
  switch (s) {
    case QuadStatus::converged:
      return "converged";
    case QuadStatus::no_convergence:
      return "no_convergence";
    case QuadStatus::diverged:
      return "diverged";
  }
  return "unknown";
}

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_panels < 8) throw DomainError("max_panels must be at least 8");
  if (outer_samples < 15) throw DomainError("outer_samples must be at least 15");
}

namespace {

// Kronrod abscissae on [-1, 1] (descending) and weights; the 7-point Gauss
// rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

double magnitude(double v) { return std::abs(v); }
double magnitude(const std::complex<double>& v) { return std::abs(v); }
bool is_finite(double v) { return std::isfinite(v); }
bool is_finite(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// Neumaier summation, component-wise for complex values.
class Compensated {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <class T>
class Accumulator;

template <>
class Accumulator<double> {
 public:
  void add(double v) { acc_.add(v); }
  double value() const { return acc_.value(); }

 private:
  Compensated acc_;
};

template <>
class Accumulator<std::complex<double>> {
 public:
  void add(const std::complex<double>& v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  Compensated re_;
  Compensated im_;
};

// Change of variables for one segment: t(u) and dt/du.
struct SegmentMap {
  enum class Kind { identity, left_pole, right_pole };
  Kind kind = Kind::identity;
  double c = 0.0;
  double s = 1.0;

  double t(double u) const {
    switch (kind) {
      case Kind::identity:
        return u;
      case Kind::left_pole:
        return c + s * std::expm1(u);
      case Kind::right_pole:
        return c - s * std::expm1(u);
    }
    return u;
  }
  double jacobian(double u) const {
    return kind == Kind::identity ? 1.0 : s * std::exp(u);
  }
  // Inverse of t on the segment side of the pole.
  double u_of(double t_value) const {
    switch (kind) {
      case Kind::identity:
        return t_value;
      case Kind::left_pole:
        return std::log1p((t_value - c) / s);
      case Kind::right_pole:
        return std::log1p((c - t_value) / s);
    }
    return t_value;
  }
};

// One segment in its integration variable u ∈ [lo, hi]. Singular ends are
// given in u coordinates.
struct Segment {
  SegmentMap map;
  double lo = 0.0;
  double hi = 0.0;
  bool singular_lo = false;
  bool singular_hi = false;
};

template <class T>
struct PanelEstimate {
  T value{};
  double error = 0.0;
};

template <class T, class F>
PanelEstimate<T> gauss_kronrod(const F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double abs_half = std::abs(half);

  std::array<T, 7> fv1{};
  std::array<T, 7> fv2{};
  const T fc = f(center);
  T resg = fc * kWg[3];
  T resk = fc * kWgk[7];
  double resabs = magnitude(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = half * kXgk[jtw];
    const T f1 = f(center - absc);
    const T f2 = f(center + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (magnitude(f1) + magnitude(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = half * kXgk[jtwm1];
    const T f1 = f(center - absc);
    const T f2 = f(center + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (magnitude(f1) + magnitude(f2));
  }
  const T reskh = resk * 0.5;
  double resasc = kWgk[7] * magnitude(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (magnitude(fv1[j] - reskh) + magnitude(fv2[j] - reskh));
  }

  PanelEstimate<T> out;
  out.value = resk * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = magnitude((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  if (!is_finite(out.value) || !std::isfinite(err)) {
    err = std::numeric_limits<double>::infinity();
  }
  out.error = err;
  return out;
}

struct MergedHints {
  std::vector<PoleHint> poles;
  std::vector<double> breakpoints;
};

MergedHints merge_hints(const QuadratureConfig& config, const QuadratureHints& hints) {
  MergedHints m;
  m.poles = hints.poles;
  m.poles.insert(m.poles.end(), config.pole_hints.begin(), config.pole_hints.end());
  m.poles.erase(std::remove_if(m.poles.begin(), m.poles.end(),
                               [](const PoleHint& h) {
                                 return !std::isfinite(h.location) || !(h.scale > 0.0) ||
                                        !std::isfinite(h.scale);
                               }),
                m.poles.end());
  m.breakpoints = hints.breakpoints;
  return m;
}

// Splits [a, b] at breakpoints and interior poles and picks a change of
// variables for every piece.
std::vector<Segment> build_segments(double a, double b, const MergedHints& hints) {
  std::vector<double> cuts = {a, b};
  for (double t : hints.breakpoints) {
    if (t > a && t < b) cuts.push_back(t);
  }
  for (const auto& h : hints.poles) {
    if (h.location > a && h.location < b) cuts.push_back(h.location);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::pair<double, double>> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double l = cuts[i];
    const double r = cuts[i + 1];
    bool sing_l = false;
    bool sing_r = false;
    for (const auto& h : hints.poles) {
      if (!h.singular) continue;
      if (h.location == l) sing_l = true;
      if (h.location == r) sing_r = true;
    }
    const double mid = l + 0.5 * (r - l);
    if (sing_l && sing_r && mid > l && mid < r) {
      pieces.emplace_back(l, mid);
      pieces.emplace_back(mid, r);
    } else {
      pieces.emplace_back(l, r);
    }
  }

  std::vector<Segment> segments;
  segments.reserve(pieces.size());
  for (const auto& [l, r] : pieces) {
    const double length = r - l;
    const PoleHint* best = nullptr;
    bool best_left = true;
    double best_metric = std::numeric_limits<double>::infinity();
    for (const auto& h : hints.poles) {
      double d;
      bool left;
      if (h.location <= l) {
        d = l - h.location;
        left = true;
      } else if (h.location >= r) {
        d = h.location - r;
        left = false;
      } else {
        continue;
      }
      const double metric = d + h.scale;
      if (metric < best_metric) {
        best_metric = metric;
        best = &h;
        best_left = left;
      }
    }

    Segment seg;
    if (best != nullptr && best_metric < length) {
      seg.map.kind = best_left ? SegmentMap::Kind::left_pole : SegmentMap::Kind::right_pole;
      seg.map.c = best->location;
      seg.map.s = best->scale;
      const double u_l = seg.map.u_of(l);
      const double u_r = seg.map.u_of(r);
      seg.lo = std::min(u_l, u_r);
      seg.hi = std::max(u_l, u_r);
    } else {
      seg.lo = l;
      seg.hi = r;
    }
    // A singular end maps to whichever u-end corresponds to it.
    for (const auto& h : hints.poles) {
      if (!h.singular) continue;
      if (h.location == l || h.location == r) {
        const double u = seg.map.u_of(h.location);
        if (std::abs(u - seg.lo) <= std::abs(u - seg.hi)) {
          seg.singular_lo = true;
        } else {
          seg.singular_hi = true;
        }
      }
    }
    if (seg.hi > seg.lo) segments.push_back(seg);
  }
  return segments;
}

template <class T>
struct TailResult {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  QuadStatus status = QuadStatus::converged;
};

// Geometric panels accumulating toward a singular endpoint `e` from the
// body side at distance `span`. Refinement level L uses 4·2^L panels; the
// remainder past the last panel is extrapolated from the decay ratio of the
// last two panels. Three successive levels that each grow the estimate by
// more than 10% declare divergence.
template <class T, class F>
TailResult<T> integrate_tail(const F& f, double e, double span, const QuadratureConfig& cfg) {
  TailResult<T> out;
  std::vector<T> contrib;
  std::vector<double> errs;
  bool truncated = false;

  auto extend_to = [&](std::size_t count) {
    while (contrib.size() < count && !truncated) {
      const std::size_t j = contrib.size();
      const double near = e + span * std::ldexp(1.0, -static_cast<int>(j) - 1);
      const double far = e + span * std::ldexp(1.0, -static_cast<int>(j));
      if (near == e || near == far) {
        truncated = true;
        break;
      }
      const auto est = gauss_kronrod<T>(f, std::min(near, far), std::max(near, far));
      out.evaluations += 15;
      contrib.push_back(est.value);
      errs.push_back(est.error);
    }
  };

  auto estimate = [&]() {
    Accumulator<T> acc;
    for (const auto& c : contrib) acc.add(c);
    T total = acc.value();
    const std::size_t n = contrib.size();
    if (n >= 2 && magnitude(contrib[n - 2]) > 0.0) {
      const double rho = magnitude(contrib[n - 1]) / magnitude(contrib[n - 2]);
      if (rho < 0.95) total += contrib[n - 1] * (rho / (1.0 - rho));
    }
    return total;
  };

  T previous{};
  bool have_previous = false;
  int strikes = 0;
  constexpr int kMaxLevel = 7;
  for (int level = 0; level <= kMaxLevel; ++level) {
    extend_to(static_cast<std::size_t>(4) << level);
    const T current = estimate();
    if (!is_finite(current)) {
      out.value = previous;
      out.status = QuadStatus::diverged;
      return out;
    }
    double err_sum = 0.0;
    for (double v : errs) err_sum += v;
    if (have_previous) {
      const double change = magnitude(current - previous);
      strikes = magnitude(current) > 1.1 * magnitude(previous) ? strikes + 1 : 0;
      if (strikes >= 3) {
        out.value = current;
        out.error = change + err_sum;
        out.status = QuadStatus::diverged;
        return out;
      }
      const double tol = std::max(cfg.abs_tol, cfg.rel_tol * magnitude(current));
      if (change <= tol) {
        out.value = current;
        out.error = change + err_sum;
        return out;
      }
      if (truncated) {
        out.value = current;
        out.error = change + err_sum;
        out.status = QuadStatus::no_convergence;
        return out;
      }
    }
    previous = current;
    have_previous = true;
  }
  double err_sum = 0.0;
  for (double v : errs) err_sum += v;
  out.value = previous;
  out.error = err_sum + magnitude(previous) * cfg.rel_tol;
  out.status = QuadStatus::no_convergence;
  return out;
}

template <class T>
struct Panel {
  double lo;
  double hi;
  std::size_t segment;
  std::uint64_t id;
  PanelEstimate<T> est;
};

template <class T>
struct PanelOrder {
  bool operator()(const Panel<T>& x, const Panel<T>& y) const {
    if (x.est.error != y.est.error) return x.est.error < y.est.error;
    return x.id > y.id;
  }
};

template <class T>
BasicResult<T> adaptive(const std::function<T(double)>& g, double a, double b,
                        const QuadratureConfig& cfg, const QuadratureHints& hints) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integration limits must be finite");
  }
  BasicResult<T> result;
  if (a == b) return result;
  if (a > b) {
    result = adaptive<T>(g, b, a, cfg, hints);
    result.value = -result.value;
    return result;
  }

  const MergedHints merged = merge_hints(cfg, hints);
  std::vector<Segment> segments = build_segments(a, b, merged);

  std::size_t evaluations = 0;
  bool diverged = false;
  bool tail_incomplete = false;
  Accumulator<T> tail_total;
  double tail_error = 0.0;

  auto integrand_for = [&g](const Segment& seg) {
    return [&g, map = seg.map](double u) -> T { return g(map.t(u)) * map.jacobian(u); };
  };

  // Peel geometric tails off singular ends; the remaining bodies join the pool.
  for (auto& seg : segments) {
    const auto f = integrand_for(seg);
    if (seg.singular_lo) {
      const double span = 0.5 * (seg.hi - seg.lo);
      const auto tail = integrate_tail<T>(f, seg.lo, span, cfg);
      evaluations += tail.evaluations;
      tail_total.add(tail.value);
      tail_error += tail.error;
      if (tail.status == QuadStatus::diverged) diverged = true;
      if (tail.status == QuadStatus::no_convergence) tail_incomplete = true;
      seg.lo += span;
    }
    if (seg.singular_hi) {
      const double span = -0.5 * (seg.hi - seg.lo);
      const auto tail = integrate_tail<T>(f, seg.hi, span, cfg);
      evaluations += tail.evaluations;
      tail_total.add(tail.value);
      tail_error += tail.error;
      if (tail.status == QuadStatus::diverged) diverged = true;
      if (tail.status == QuadStatus::no_convergence) tail_incomplete = true;
      seg.hi += span;
    }
  }

  std::priority_queue<Panel<T>, std::vector<Panel<T>>, PanelOrder<T>> queue;
  std::vector<Panel<T>> finished;
  std::uint64_t next_id = 0;
  Accumulator<T> running_value;
  Compensated running_error;
  running_value.add(tail_total.value());
  running_error.add(tail_error);

  auto evaluate_panel = [&](std::size_t s, double lo, double hi) {
    const auto f = integrand_for(segments[s]);
    Panel<T> p{lo, hi, s, next_id++, gauss_kronrod<T>(f, lo, hi)};
    evaluations += 15;
    return p;
  };

  for (std::size_t s = 0; s < segments.size(); ++s) {
    auto p = evaluate_panel(s, segments[s].lo, segments[s].hi);
    running_value.add(p.est.value);
    running_error.add(p.est.error);
    queue.push(p);
  }

  std::size_t panel_count = queue.size();
  auto tolerance = [&]() {
    return std::max(cfg.abs_tol, cfg.rel_tol * magnitude(running_value.value()));
  };

  if (!diverged) {
    while (!queue.empty() && running_error.value() > tolerance() &&
           panel_count < cfg.max_panels) {
      Panel<T> worst = queue.top();
      queue.pop();
      if (!std::isfinite(worst.est.error)) {
        finished.push_back(worst);
        diverged = true;
        break;
      }
      const double mid = worst.lo + 0.5 * (worst.hi - worst.lo);
      if (!(mid > worst.lo && mid < worst.hi)) {
        finished.push_back(worst);
        continue;
      }
      auto left = evaluate_panel(worst.segment, worst.lo, mid);
      auto right = evaluate_panel(worst.segment, mid, worst.hi);
      running_value.add(-worst.est.value);
      running_value.add(left.est.value);
      running_value.add(right.est.value);
      running_error.add(-worst.est.error);
      running_error.add(left.est.error);
      running_error.add(right.est.error);
      queue.push(left);
      queue.push(right);
      ++panel_count;
    }
  }

  while (!queue.empty()) {
    finished.push_back(queue.top());
    queue.pop();
  }
  std::sort(finished.begin(), finished.end(), [](const Panel<T>& x, const Panel<T>& y) {
    if (x.segment != y.segment) return x.segment < y.segment;
    return x.lo < y.lo;
  });

  Accumulator<T> total;
  Compensated error;
  bool finite = true;
  for (const auto& p : finished) {
    if (!is_finite(p.est.value)) {
      finite = false;
      continue;
    }
    total.add(p.est.value);
    error.add(p.est.error);
  }
  total.add(tail_total.value());
  error.add(tail_error);

  result.value = total.value();
  result.error_estimate = error.value();
  result.evaluations = evaluations;
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * magnitude(result.value));
  if (diverged || !finite) {
    result.status = QuadStatus::diverged;
  } else if (result.error_estimate > tol || tail_incomplete) {
    result.status = QuadStatus::no_convergence;
  }
  return result;
}

}  // namespace

NormResult integrate_1d(const RealIntegrand& g, double a, double b,
                        const QuadratureConfig& config, const QuadratureHints& hints) {
  return adaptive<double>(g, a, b, config, hints);
}

ComplexResult integrate_1d_complex(const ComplexIntegrand& g, double a, double b,
                                   const QuadratureConfig& config,
                                   const QuadratureHints& hints) {
  return adaptive<std::complex<double>>(g, a, b, config, hints);
}

NormResult integrate_1d_fixed(const RealIntegrand& g, double a, double b, std::size_t nodes,
                              const QuadratureHints& hints) {
  NormResult result;
  if (a == b) return result;
  if (a > b) {
    result = integrate_1d_fixed(g, b, a, nodes, hints);
    result.value = -result.value;
    return result;
  }
  const MergedHints merged = merge_hints(QuadratureConfig{}, hints);
  const auto segments = build_segments(a, b, merged);
  if (segments.empty()) return result;

  double total_length = 0.0;
  for (const auto& s : segments) total_length += s.hi - s.lo;
  const std::size_t panels_total = std::max<std::size_t>(nodes / 15, segments.size());

  Compensated value;
  Compensated error;
  for (const auto& seg : segments) {
    const auto share = static_cast<double>(panels_total) * (seg.hi - seg.lo) / total_length;
    const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(share)));
    const double width = (seg.hi - seg.lo) / static_cast<double>(count);
    const auto f = [&g, map = seg.map](double u) { return g(map.t(u)) * map.jacobian(u); };
    for (std::size_t i = 0; i < count; ++i) {
      const double lo = seg.lo + width * static_cast<double>(i);
      const double hi = i + 1 == count ? seg.hi : lo + width;
      const auto est = gauss_kronrod<double>(f, lo, hi);
      value.add(est.value);
      error.add(est.error);
      result.evaluations += 15;
    }
  }
  result.value = value.value();
  result.error_estimate = error.value();
  if (!std::isfinite(result.value)) result.status = QuadStatus::diverged;
  return result;
}

}  // namespace radnorm
