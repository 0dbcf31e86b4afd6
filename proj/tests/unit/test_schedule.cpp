#include <doctest.h>

#include <cmath>
#include <string>

#include "radnorm/errors.hpp"
#include "radnorm/kernels.hpp"
#include "radnorm/schedule.hpp"
#include "support.hpp"

using namespace radnorm;
using radnorm::test::Gen;

TEST_SUITE("kernels") {
  TEST_CASE("schedule examples at (2, 1.25)") {
    const CounterexampleSchedule s = build_schedule(ExponentPair(2, 1.25), 2);
    REQUIRE(s.m() == 2);
    CHECK(std::exp(s.log_deltas[0]) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(std::exp(s.log_deltas[1]) == doctest::Approx(1.0 / 512.0).epsilon(1e-14));
    CHECK(std::exp(s.log_deltas[0]) > 2.0 * std::exp(0.5 * s.log_deltas[1]));
    CHECK(2.0 * std::exp(0.5 * s.log_deltas[1]) == doctest::Approx(0.08838834764831845).epsilon(1e-13));
    CHECK(s.thetas[0] == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(s.thetas[1] == doctest::Approx(0.5078125).epsilon(1e-15));
    const AnnulusArc& a2 = s.regions[1];
    CHECK(a2.x_lo() == doctest::Approx((1.0 / 512.0) / 16.0).epsilon(1e-14));
    CHECK(a2.x_hi() == doctest::Approx(2.0 * std::sqrt(1.0 / 512.0)).epsilon(1e-14));
    CHECK(a2.half_width() == doctest::Approx(4.0 / 512.0).epsilon(1e-14));
  }

  TEST_CASE("schedule constraints hold strictly up to the overflow bound") {
    for (const auto& e : {ExponentPair(2, 1.25), ExponentPair(3, 1.5), ExponentPair(4, 2)}) {
      const std::size_t cap = max_schedule_length(e);
      CHECK(cap >= 3);
      for (std::size_t m = 1; m <= cap; ++m) {
        const CounterexampleSchedule s = build_schedule(e, m);
        const auto violations = check_schedule(s);
        CHECK_MESSAGE(violations.empty(), "p=" << e.p() << " m=" << m << ": "
                                                << (violations.empty() ? "" : violations.front()));
      }
      CHECK_THROWS_AS(build_schedule(e, cap + 1), OverflowError);
    }
  }

  TEST_CASE("overflow bound at (2, 1.25) is m = 6") {
    const ExponentPair e(2, 1.25);
    CHECK(max_schedule_length(e) == 6);
    const CounterexampleSchedule s = build_schedule(e, 6);
    const double log10_deltas[] = {-0.90308998699194358564, -2.7092699609758307569, -9.0820523923668171454,
                                   -23.486224800810839765, -53.487899536581397459, -114.42489160428221382};
    for (std::size_t n = 0; n < 6; ++n) {
      CHECK(s.log_deltas[n] / std::log(10.0) == doctest::Approx(log10_deltas[n]).epsilon(1e-14));
    }
    CHECK_THROWS_AS(build_schedule(e, 7), OverflowError);
  }

  TEST_CASE("schedule preconditions") {
    CHECK_THROWS_AS(build_schedule(ExponentPair(2, 2), 3), InvalidExponents);
    CHECK_THROWS_AS(build_schedule(ExponentPair(1.5, 3), 3), InvalidExponents);
    CHECK_THROWS_AS(build_schedule(ExponentPair(3, 2), 0), DomainError);
  }

  TEST_CASE("the checker detects broken schedules") {
    CounterexampleSchedule s = build_schedule(ExponentPair(2, 1.25), 3);
    s.log_deltas[2] = s.log_deltas[1];
    CHECK_FALSE(check_schedule(s).empty());
    CounterexampleSchedule t = build_schedule(ExponentPair(2, 1.25), 3);
    t.thetas[1] += 0.01;
    CHECK_FALSE(check_schedule(t).empty());
  }

  TEST_CASE("regions are pairwise disjoint") {
    const CounterexampleSchedule s = build_schedule(ExponentPair(2, 1.25), 6);
    for (std::size_t i = 0; i < s.m(); ++i) {
      for (std::size_t j = i + 1; j < s.m(); ++j) {
        const AnnulusArc& a = s.regions[i];
        const AnnulusArc& b = s.regions[j];
        CHECK(b.x_hi() < a.x_lo());
        CHECK(b.theta_lo() > a.theta_hi());
        CHECK(a.disjoint_from(b));
      }
    }
  }

  TEST_CASE("pieces partition the rotated pole") {
    const ExponentPair e(2, 1.25);
    const CounterexampleSchedule s = build_schedule(e, 5);
    Gen gen(401);
    for (std::size_t n = 1; n <= s.m(); ++n) {
      const Pieces pc = pieces(s, n);
      const DiscFunction u = rotated_pole(s, n);
      const AnnulusArc& a = s.regions[n - 1];
      for (int i = 0; i < 200; ++i) {
        const DiscPoint z =
            gen.coin() ? gen.point()
                       : DiscPoint::anchored(gen.log_uniform(a.x_lo() / 4, std::min(1.0, a.x_hi() * 4)),
                                             a.center(), gen.uniform(-2.0, 2.0) * a.half_width());
        const double f = evaluate_abs(pc.f, z);
        const double g = evaluate_abs(pc.g, z);
        if (!a.contains(z)) CHECK(f == 0.0);
        CHECK(f + g == evaluate_abs(u, z));
      }
    }
    CHECK_THROWS_AS(pieces(s, 0), IndexError);
    CHECK_THROWS_AS(pieces(s, 6), IndexError);
  }

  TEST_CASE("F_1 is the first rotated pole") {
    const ExponentPair e(2, 1.25);
    const CounterexampleSchedule s = build_schedule(e, 1);
    const DiscFunction F = f_sum(s);
    const DiscFunction u = u_delta(0.125, e, 0.125);
    Gen gen(409);
    for (int i = 0; i < 100; ++i) {
      const DiscPoint z = gen.point();
      CHECK(evaluate_abs(F, z) == doctest::Approx(evaluate_abs(u, z)).epsilon(1e-14));
    }
  }

  TEST_CASE("F_m sums the rotated poles") {
    const CounterexampleSchedule s = build_schedule(ExponentPair(3, 1.5), 4);
    const DiscFunction F = f_sum(s);
    Gen gen(419);
    for (int i = 0; i < 100; ++i) {
      const DiscPoint z = gen.point();
      std::complex<double> acc = 0.0;
      for (std::size_t n = 1; n <= 4; ++n) acc += rotated_pole(s, n).evaluate(z);
      CHECK(std::abs(F.evaluate(z) - acc) <= 1e-12 * std::abs(acc));
    }
  }

  TEST_CASE("schedule JSON keeps log-deltas as decimal strings") {
    const CounterexampleSchedule s = build_schedule(ExponentPair(2, 1.25), 5);
    const nlohmann::json j = to_json(s);
    CHECK(j["m"] == 5);
    REQUIRE(j["deltas"].size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      const std::string text = j["deltas"][i]["log10"].get<std::string>();
      CHECK(std::stod(text) * std::log(10.0) == doctest::Approx(s.log_deltas[i]).epsilon(1e-15));
      CHECK(j["regions"][i]["theta_center"].get<double>() == s.thetas[i]);
    }
    CHECK(std::stod(j["deltas"][0]["log10"].get<std::string>()) ==
          doctest::Approx(-0.90308998699194358564).epsilon(1e-15));
  }
}
