#include "radnorm/schedule.hpp"

#include <cfloat>
#include <cmath>
#include <cstdio>

#include "radnorm/errors.hpp"
#include "radnorm/kernels.hpp"

namespace radnorm {

namespace {

const double kLogMinNormal = std::log(DBL_MIN);

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double log_next_delta(double log_delta, double p, double n) {
  return 2.0 * log_delta - std::log(2.0) - 4.0 * p * std::log(n) - 2.0 * std::log(n + 1.0);
}

}  // namespace

CounterexampleSchedule build_schedule(const ExponentPair& e, std::size_t m) {
  if (!(e.p() > e.q())) throw InvalidExponents("counterexample schedule requires p > q");
  if (m == 0) throw DomainError("counterexample schedule requires m >= 1");

  const double p = e.p();
  CounterexampleSchedule s{e, {}, {}, {}};
  s.log_deltas.reserve(m);
  s.log_deltas.push_back(std::log(0.125));
  for (std::size_t n = 1; n < m; ++n) {
    s.log_deltas.push_back(log_next_delta(s.log_deltas.back(), p, static_cast<double>(n)));
  }
  if (2.0 * s.log_deltas.back() < kLogMinNormal) {
    throw OverflowError("delta_" + std::to_string(m) + " = 10^" +
                        format_g17(s.log_deltas.back() / std::log(10.0)) +
                        " cannot be squared in double precision; maximum m is " +
                        std::to_string(max_schedule_length(e)));
  }

  s.thetas.reserve(m);
  s.regions.reserve(m);
  double prev_spread = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double n = static_cast<double>(i + 1);
    const double delta = std::exp(s.log_deltas[i]);
    const double spread = n * n * delta;
    if (i == 0) {
      s.thetas.push_back(delta);
    } else {
      s.thetas.push_back(s.thetas.back() + 1.0 / (n * n) + prev_spread + spread);
    }
    prev_spread = spread;
    const double x_lo = std::exp(s.log_deltas[i] - 2.0 * p * std::log(n));
    const double x_hi = n * std::exp(0.5 * s.log_deltas[i]);
    s.regions.emplace_back(x_lo, x_hi, s.thetas.back(), spread);
  }
  return s;
}

std::size_t max_schedule_length(const ExponentPair& e) {
  double log_delta = std::log(0.125);
  std::size_t m = 1;
  for (;;) {
    const double next = log_next_delta(log_delta, e.p(), static_cast<double>(m));
    if (2.0 * next < kLogMinNormal) return m;
    log_delta = next;
    ++m;
  }
}

std::vector<std::string> check_schedule(const CounterexampleSchedule& s) {
  std::vector<std::string> violations;
  const double p = s.e.p();
  const std::size_t m = s.m();
  if (s.thetas.size() != m || s.regions.size() != m) {
    violations.push_back("sequence lengths differ");
    return violations;
  }
  double weighted_sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double n = static_cast<double>(i + 1);
    const double ld = s.log_deltas[i];
    if (!(2.0 * std::log(n) + ld < std::log(0.25))) {
      violations.push_back("n^2 delta_n >= 1/4 at n = " + std::to_string(i + 1));
    }
    if (i + 1 < m) {
      const double lhs = ld - 2.0 * p * std::log(n);
      const double rhs = std::log(n + 1.0) + 0.5 * s.log_deltas[i + 1];
      if (!(lhs > rhs)) {
        violations.push_back("delta_n / n^(2p) <= (n+1) delta_(n+1)^(1/2) at n = " +
                             std::to_string(i + 1));
      }
    }
    weighted_sum += n * n * std::exp(ld);

    const double delta = std::exp(ld);
    const double expected_theta =
        i == 0 ? delta
               : s.thetas[i - 1] + 1.0 / (n * n) + (n - 1.0) * (n - 1.0) * std::exp(s.log_deltas[i - 1]) +
                     n * n * delta;
    if (std::abs(s.thetas[i] - expected_theta) > 4.0 * DBL_EPSILON * std::abs(expected_theta)) {
      violations.push_back("theta recurrence broken at n = " + std::to_string(i + 1));
    }

    const AnnulusArc& a = s.regions[i];
    if (a.center() != s.thetas[i] || a.half_width() != n * n * delta) {
      violations.push_back("angular interval J_n malformed at n = " + std::to_string(i + 1));
    }
  }
  if (!(weighted_sum < 2.0)) violations.push_back("sum of j^2 delta_j >= 2");

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const AnnulusArc& a = s.regions[i];
      const AnnulusArc& b = s.regions[j];
      const bool radial = a.x_hi() < b.x_lo() || b.x_hi() < a.x_lo();
      const double gap = std::abs(b.center() - a.center()) - (a.half_width() + b.half_width());
      if (!radial) {
        violations.push_back("radial intervals overlap for n = " + std::to_string(i + 1) +
                             ", " + std::to_string(j + 1));
      }
      if (!(gap > 0.0)) {
        violations.push_back("angular intervals overlap for n = " + std::to_string(i + 1) +
                             ", " + std::to_string(j + 1));
      }
    }
  }
  return violations;
}

DiscFunction rotated_pole(const CounterexampleSchedule& s, std::size_t n) {
  if (n < 1 || n > s.m()) {
    throw IndexError("piece index " + std::to_string(n) + " outside 1.." + std::to_string(s.m()));
  }
  return u_delta_log(s.log_deltas[n - 1], s.e, s.thetas[n - 1]);
}

Pieces pieces(const CounterexampleSchedule& s, std::size_t n) {
  const DiscFunction u = rotated_pole(s, n);
  const AnnulusArc& region = s.regions[n - 1];
  return {masked(u, region, MaskSide::inside), masked(u, region, MaskSide::outside)};
}

DiscFunction f_sum(const CounterexampleSchedule& s) {
  std::vector<DiscFunction> terms;
  terms.reserve(s.m());
  for (std::size_t n = 1; n <= s.m(); ++n) terms.push_back(rotated_pole(s, n));
  return sum(std::move(terms));
}

DiscFunction f_pieces_sum(const CounterexampleSchedule& s) {
  std::vector<DiscFunction> terms;
  terms.reserve(s.m());
  for (std::size_t n = 1; n <= s.m(); ++n) terms.push_back(pieces(s, n).f);
  return sum(std::move(terms));
}

nlohmann::json to_json(const CounterexampleSchedule& s) {
  using nlohmann::json;
  json doc;
  doc["p"] = s.e.p();
  doc["q"] = s.e.q();
  doc["m"] = s.m();
  json deltas = json::array();
  json thetas = json::array();
  json regions = json::array();
  for (std::size_t i = 0; i < s.m(); ++i) {
    deltas.push_back({{"log10", format_g17(s.log_deltas[i] / std::log(10.0))}});
    thetas.push_back(s.thetas[i]);
    const AnnulusArc& a = s.regions[i];
    regions.push_back({{"n", i + 1},
                       {"one_minus_r", {a.x_lo(), a.x_hi()}},
                       {"theta_center", a.center()},
                       {"theta_half_width", a.half_width()}});
  }
  doc["deltas"] = std::move(deltas);
  doc["thetas"] = std::move(thetas);
  doc["regions"] = std::move(regions);
  return doc;
}

}  // namespace radnorm
