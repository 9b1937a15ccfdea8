// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "hli/constants.hpp"
#include "hli/interval.hpp"
#include "hli/precision.hpp"
#include "hli/rational.hpp"
#include "hli/shift.hpp"
#include "test_support.hpp"

using hli::Interval;
using hli::test::consistent_with_printed;
using hli::test::matches_printed;

namespace {

// Akiyama-Tanigawa: an independent route to B_n (with B_1 = +1/2).
mpq_class bernoulli_oracle(unsigned n) {
  std::vector<mpq_class> a(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (unsigned j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
  }
  return a[0];
}

}  // namespace

TEST_CASE("integer interval arithmetic is exact", "[interval]") {
  Interval s = Interval(1) + Interval(2);
  CHECK(s.is_point());
  CHECK(s.contains(mpq_class(3)));
  Interval l = log(Interval(1));
  CHECK(l.is_point());
  CHECK(l.contains(mpq_class(0)));
}

TEST_CASE("reciprocal of 3 is tight at working precision", "[interval]") {
  Interval r = recip(Interval(3));
  CHECK(r.contains(mpq_class(1, 3)));
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(hli::current_digits() - 1));
  CHECK(r.hi_rational() - r.lo_rational() <= mpq_class(1, p));
}

TEST_CASE("operations reject arguments outside their domain", "[interval]") {
  Interval straddle = Interval::from_bounds(-1, 1);
  CHECK_THROWS_AS(recip(straddle), hli::DomainError);
  CHECK_THROWS_AS(Interval(1) / straddle, hli::DomainError);
  CHECK_THROWS_AS(log(Interval(0)), hli::DomainError);
  CHECK_THROWS_AS(sqrt(Interval(-1)), hli::DomainError);
  CHECK_THROWS_AS(Interval::from_bounds(2, 1), hli::DomainError);
}

TEST_CASE("every operation encloses the exact rational image", "[interval][property]") {
  hli::test::RationalSampler sample(0x5eed01);
  for (int i = 0; i < 1000; ++i) {
    mpq_class a = sample.uniform(-50, 50);
    mpq_class b = sample.uniform(mpq_class(1, 10), 50);
    Interval ia = Interval::from_rational(a);
    Interval ib = Interval::from_rational(b);
    REQUIRE((ia + ib).contains(mpq_class(a + b)));
    REQUIRE((ia - ib).contains(mpq_class(a - b)));
    REQUIRE((ia * ib).contains(mpq_class(a * b)));
    REQUIRE((ia / ib).contains(mpq_class(a / b)));
    REQUIRE(recip(ib).contains(mpq_class(1 / b)));
    REQUIRE(pow_int(ia, 3).contains(mpq_class(a * a * a)));
    REQUIRE(sqrt(sqr(ib)).contains(b));
    REQUIRE(exp(log(ib)).contains(b));
    REQUIRE(abs(ia).contains(mpq_class(abs(a))));
  }
}

TEST_CASE("interval widths are finite and ordered", "[interval][property]") {
  hli::test::RationalSampler sample(42);
  for (int i = 0; i < 200; ++i) {
    Interval x = exp(Interval::from_rational(sample.uniform(-20, 20)));
    REQUIRE(x.width() >= 0);
    REQUIRE(x.lo_rational() <= x.hi_rational());
  }
}

TEST_CASE("decimal parsing is exact", "[interval]") {
  CHECK(hli::parse_decimal("0.4986013304") == mpq_class(623251663, 1250000000));
  CHECK(hli::parse_decimal("1e-3") == mpq_class(1, 1000));
  CHECK(hli::parse_decimal("-2.5") == mpq_class(-5, 2));
  CHECK(hli::parse_decimal("007") == mpq_class(7));
  CHECK_THROWS_AS(hli::parse_decimal("1.2.3"), hli::DomainError);
  CHECK_THROWS_AS(hli::parse_decimal(""), hli::DomainError);
}

TEST_CASE("directed decimal output brackets the value", "[interval]") {
  Interval third = recip(Interval(3));
  CHECK(third.lower_decimal(5) == "0.33333");
  CHECK(third.upper_decimal(5) == "0.33334");
  CHECK(Interval(-2).lower_decimal(2) == "-2.00");
}

TEST_CASE("Bernoulli numbers", "[bernoulli]") {
  CHECK(hli::bernoulli_even(1) == mpq_class(1, 6));
  CHECK(hli::bernoulli_even(2) == mpq_class(-1, 30));
  CHECK(hli::bernoulli_even(3) == mpq_class(1, 42));
  CHECK_THROWS_AS(hli::bernoulli_even(0), hli::DomainError);
  for (unsigned k = 1; k <= 15; ++k) {
    INFO("k = " << k);
    CHECK(hli::bernoulli_even(k) == bernoulli_oracle(2 * k));
  }
}

TEST_CASE("euler_gamma", "[constants]") {
  Interval g12 = hli::euler_gamma(12);
  CHECK(consistent_with_printed(g12, "0.577215664901"));
  CHECK(g12.width() <= 1e-11);

  Interval g15 = hli::euler_gamma(15);
  CHECK(g15.overlaps(g12));
  CHECK(g15.width() <= 1e-14);

  // 45 digits from an independent high-precision evaluation, truncated
  mpq_class reference = hli::parse_decimal("0.577215664901532860606512090082402431042159336");
  Interval cell = Interval::from_bounds(reference, reference + mpq_class(1, mpz_class("1" + std::string(45, '0'))));
  Interval g40 = hli::euler_gamma(40);
  CHECK(g40.overlaps(cell));
  CHECK(g40.width() <= 1e-39);
  CHECK(matches_printed(g40, "0.577215664901532860606512090082402431"));

  hli::set_precision_config({40, 60});
  CHECK_THROWS_AS(hli::euler_gamma(61), hli::PrecisionExceeded);
  hli::set_precision_config({40, 200});
}

TEST_CASE("exp_gamma", "[constants]") {
  Interval eg = hli::exp_gamma();
  CHECK(consistent_with_printed(eg, "1.781072417990"));
  CHECK(eg.contains(exp(hli::gamma_constant())) );
  CHECK(log(eg).overlaps(hli::gamma_constant()));
}

TEST_CASE("refining precision never contradicts a coarser enclosure", "[constants][property]") {
  std::vector<Interval> gammas;
  std::vector<Interval> logs;
  for (int d = 15; d <= 90; d += 5) {
    hli::PrecisionScope scope(d);
    gammas.push_back(hli::gamma_constant());
    logs.push_back(log(Interval::from_rational(mpq_class(22, 7))));
  }
  for (std::size_t i = 1; i < gammas.size(); ++i) {
    CHECK(gammas[i].overlaps(gammas[i - 1]));
    CHECK(logs[i].overlaps(logs[i - 1]));
    CHECK(gammas[i].width() <= gammas[i - 1].width());
  }
}

TEST_CASE("precision configuration", "[precision]") {
  CHECK_THROWS_AS(hli::set_precision_config({14, 200}), hli::DomainError);
  CHECK_THROWS_AS(hli::set_precision_config({50, 40}), hli::DomainError);
  CHECK(hli::precision_config().working_digits == 40);
  {
    hli::PrecisionScope scope(60);
    CHECK(hli::current_digits() == 60);
  }
  CHECK(hli::current_digits() == 40);

  ::setenv("HARMONIC_LI_DIGITS", "55", 1);
  CHECK(hli::digits_from_environment() == 55);
  ::setenv("HARMONIC_LI_DIGITS", "55x", 1);
  CHECK_FALSE(hli::digits_from_environment().has_value());
  ::unsetenv("HARMONIC_LI_DIGITS");
  CHECK_FALSE(hli::digits_from_environment().has_value());
}

TEST_CASE("shift expressions", "[shift]") {
  hli::Shift g = hli::Shift::parse("gamma");
  CHECK(g.gamma_coeff() == 1);
  CHECK(g.minus_gamma().is_point());
  CHECK(g.minus_gamma().contains(mpq_class(0)));

  hli::Shift g1 = hli::Shift::parse("gamma + 1");
  CHECK(g1.rational_part() == 1);
  CHECK(g1.minus_gamma().contains(mpq_class(1)));

  hli::Shift l2 = hli::Shift::parse("-log2");
  REQUIRE(l2.exact_exp().has_value());
  CHECK(*l2.exact_exp() == mpq_class(1, 2));

  hli::Shift lq = hli::Shift::parse("log(3/2)");
  CHECK(*lq.exact_exp() == mpq_class(3, 2));

  hli::Shift lm = hli::Shift::parse("logmu");
  REQUIRE(lm.exact_mu_exp_neg().has_value());
  CHECK(*lm.exact_mu_exp_neg() == 1);
  CHECK(hli::Shift::parse("logmu-log2").exact_mu_exp_neg() == mpq_class(2));

  CHECK(hli::Shift::parse("1e-3").rational_part() == mpq_class(1, 1000));
  CHECK(hli::Shift::parse("-15").rational_part() == -15);
  CHECK(hli::Shift::parse("logalpha").log_alpha_coeff() == 1);
  CHECK(hli::Shift::parse("logalpha").value().overlaps(log(hli::alpha_star_constant())));

  CHECK_THROWS_AS(hli::Shift::parse(""), hli::DomainError);
  CHECK_THROWS_AS(hli::Shift::parse("pi"), hli::DomainError);
  CHECK_THROWS_AS(hli::Shift::parse("log(2"), hli::DomainError);
  CHECK_THROWS_AS(hli::Shift::parse("log0"), hli::DomainError);
  CHECK_THROWS_AS(hli::Shift::parse("1gamma"), hli::DomainError);
}
