// SPDX-License-Identifier: Apache-2.0
//
// Invariants checked over sweeps of shifts and indices.
#include <string>
#include <utility>
#include <vector>

#include "catch_amalgamated.hpp"

#include "hli/discretized_li.hpp"
#include "hli/prime_counter.hpp"
#include "test_support.hpp"

using hli::Interval;
using hli::Shift;
using hli::ShiftContext;

namespace {

Interval log_mu() { return log(hli::mu_constant()); }

}  // namespace

TEST_CASE("discrepancies are positive, increasing and consistent", "[discrepancies]") {
  std::vector<std::pair<const char*, std::uint64_t>> cases = {{"1", 1}, {"0", 2}, {"-1", 4}, {"gamma", 1}};
  for (auto [text, start] : cases) {
    INFO("t = " << text << ", N = " << start);
    ShiftContext ctx(Shift::parse(text), start);
    auto previous = hli::discrepancies(ctx, start + 1);
    for (std::uint64_t n = start + 2; n <= start + 200; ++n) {
      auto d = hli::discrepancies(ctx, n);
      REQUIRE(d.theta.is_positive());
      REQUIRE(d.eta.is_positive());
      REQUIRE(d.delta.is_positive());
      REQUIRE((d.theta - previous.theta).is_positive());
      REQUIRE((d.eta - previous.eta).is_positive());
      REQUIRE((d.delta - previous.delta).is_positive());
      REQUIRE(d.theta.overlaps(previous.eta + previous.delta));
      previous = d;
    }
  }
}

TEST_CASE("range ceiling chain over random shifts", "[beta]") {
  hli::test::RationalSampler sample(313);
  for (int i = 0; i < 100; ++i) {
    mpq_class t = sample.uniform(-15, 15, 1009);
    INFO("t = " << t.get_str());
    auto c = hli::beta_range_ceiling_check(Shift::rational(t));
    REQUIRE(c.scaled_li_at_start.is_nonnegative());
    REQUIRE(hli::certainly_less_equal(c.scaled_li_at_start, c.scaled_li_bound));
    REQUIRE(hli::certainly_less(c.scaled_li_bound, c.reciprocal_log_mu));
  }
}

TEST_CASE("beta stays below 1/log mu", "[beta]") {
  std::vector<std::string> shifts;
  for (int t = -15; t <= 15; ++t) shifts.push_back(std::to_string(t));
  for (const char* text : {"gamma", "log2", "gamma+1", "logmu"}) shifts.emplace_back(text);
  Interval ceiling = recip(log_mu());
  for (const std::string& text : shifts) {
    INFO("t = " << text);
    Shift t = Shift::parse(text);
    std::uint64_t R = hli::r_ceiling(t).R_t;
    auto b = hli::beta_bounds(t, std::max<std::uint64_t>(R, 2));
    CHECK(hli::certainly_less(b.upper, ceiling));
  }
}

TEST_CASE("beta is bounded on shifts beyond log mu", "[beta]") {
  hli::test::RationalSampler sample(71);
  Interval cap = Interval::from_rational(hli::parse_decimal("2.0248040"));
  std::vector<mpq_class> ts = {mpq_class(3733, 10000), 1, mpq_class(1347155, 1000000), 2, 5, 15};
  for (int i = 0; i < 20; ++i) ts.push_back(sample.uniform(mpq_class(3733, 10000), 15, 997));
  for (const mpq_class& t : ts) {
    INFO("t = " << t.get_str());
    auto b = hli::beta_bounds(Shift::rational(t), 200);
    CHECK(hli::certainly_less(b.upper, cap));
  }
}

TEST_CASE("eta tails lie between the shifted tail integrals", "[discrepancies]") {
  constexpr std::uint64_t M = 5000;
  for (const char* text : {"1", "gamma", "2"}) {
    ShiftContext ctx(Shift::parse(text), 1);
    Interval t = ctx.t_value();
    auto T = [&](std::uint64_t r) { return hli::tail_integral(Interval(static_cast<long long>(r)), t) / Interval(24); };
    Interval eta_M = hli::discrepancies(ctx, M).eta;
    for (std::uint64_t n : {5u, 20u, 100u, 500u}) {
      INFO("t = " << text << ", n = " << n);
      // eta(t,N) - eta_n lies in [T(n+2), T(n+1)] and eta(t,N) - eta_M in [T(M+2), T(M+1)]
      Interval estimate = eta_M - hli::discrepancies(ctx, n).eta;
      CHECK(hli::certainly_less_equal(T(n + 2), estimate + T(M + 1)));
      CHECK(hli::certainly_less_equal(estimate + T(M + 2), T(n + 1)));
    }
  }
}

TEST_CASE("theta_n derivatives alternate in sign and grow in magnitude", "[derivatives]") {
  for (const char* text : {"1", "gamma", "0.5"}) {
    ShiftContext ctx(Shift::parse(text), 1);
    for (unsigned j = 0; j <= 2; ++j) {
      INFO("t = " << text << ", j = " << j);
      Interval d1000 = hli::theta_derivative(ctx, 1000, j);
      Interval d2000 = hli::theta_derivative(ctx, 2000, j);
      CHECK(d1000.is_positive());
      CHECK((d2000 - d1000).is_positive());
    }
  }
}

TEST_CASE("first derivative matches a central difference", "[derivatives]") {
  constexpr std::uint64_t n = 2000;
  auto theta_at = [](const char* text) { return hli::discrepancies(ShiftContext(Shift::parse(text), 1), n).theta; };
  Interval h = Interval::from_rational(mpq_class(1, 10000));
  Interval difference = (theta_at("1.0001") - theta_at("0.9999")) / (Interval(2) * h);
  Interval derivative = -hli::theta_derivative(ShiftContext(Shift::parse("1"), 1), n, 1);
  CHECK(abs(difference - derivative).hi_rational() < mpq_class(1, 1000000));
}

TEST_CASE("prime gap bound on random intervals", "[gap]") {
  hli::PrimeCounter counter;
  hli::test::RationalSampler sample(2024);
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t x = sample.integer(1, 999000);
    std::uint64_t y = x + sample.integer(2, 1000000 - x);
    INFO("x = " << x << ", y = " << y);
    auto g = hli::mv_gap_check(counter, x, y);
    REQUIRE(g.holds);
    REQUIRE(g.count_difference == counter.pi(y) - counter.pi(x));
  }
}
