// SPDX-License-Identifier: Apache-2.0
#include <string>

#include "catch_amalgamated.hpp"

#include "hli/constants.hpp"
#include "hli/special_functions.hpp"
#include "test_support.hpp"

using hli::Interval;
using hli::test::consistent_with_printed;
using hli::test::Real50;

namespace {

Interval q(const char* text) { return hli::decimal_interval(text); }

// (H_x - gamma) - (log(x+n+1/2) - sum_{k=1}^{n} 1/(x+k)) from the library's H_x.
Interval shifted_correction(const mpq_class& x, unsigned n) {
  mpq_class sum = 0;
  for (unsigned k = 1; k <= n; ++k) sum += 1 / (x + k);
  Interval y = Interval::from_rational(x + n + mpq_class(1, 2));
  return hli::harmonic_real(x) - hli::gamma_constant() - log(y) + Interval::from_rational(sum);
}

Interval lemma_partial_sum(const Interval& r, const Interval& u, int n) {
  Interval total;
  Interval factorial(1);
  for (int k = 2; k <= n; ++k) {
    factorial *= Interval(k - 1);
    Interval term = factorial / (r * pow_int(u, k));
    total += (k % 2 == 0) ? term : -term;
  }
  return total;
}

}  // namespace

TEST_CASE("harmonic_int", "[harmonic]") {
  CHECK(hli::harmonic_int(0).exact == mpq_class(0));
  CHECK(hli::harmonic_int(2).exact == mpq_class(3, 2));
  CHECK(hli::harmonic_int(4).exact == mpq_class(25, 12));
  mpq_class direct = 0;
  for (int k = 1; k <= 10005; ++k) direct += mpq_class(1, k);
  auto big = hli::harmonic_int(10005);
  CHECK_FALSE(big.exact.has_value());
  CHECK(big.value.contains(direct));
  CHECK(big.value.width() < 1e-35);
}

TEST_CASE("harmonic_real", "[harmonic]") {
  CHECK(hli::harmonic_real(3).contains(mpq_class(11, 6)));
  CHECK(hli::harmonic_real(0).contains(mpq_class(0)));
  CHECK_THROWS_AS(hli::harmonic_real(-1), hli::DomainError);
  CHECK_THROWS_AS(hli::harmonic_real(mpq_class(-3, 2)), hli::DomainError);

  // Independent bracket at n = 1000 from the two-sided bound, with a Boost gamma.
  mpq_class half(1, 2);
  const unsigned n = 1000;
  Real50 sum = 0;
  for (unsigned k = 1; k <= n; ++k) sum += 1 / (Real50(0.5) + k);
  Real50 base = boost::math::constants::euler<Real50>() + boost::multiprecision::log(Real50(n) + 1) - sum;
  Real50 lo = base + 1 / (24 * (Real50(n) + 1.5) * (Real50(n) + 1.5));
  Real50 hi = base + 1 / (24 * (Real50(n) + 1) * (Real50(n) + 1));
  Real50 value = hli::test::to_real(hli::harmonic_real(half));
  CHECK(value >= lo);
  CHECK(value <= hi);
  CHECK(hli::harmonic_real(half).overlaps(Interval(2) - Interval(2) * Interval::log2()));
}

TEST_CASE("shifted harmonic bound holds near the origin", "[harmonic][property]") {
  for (const char* text : {"-0.4", "0", "0.5", "1", "2", "10", "100"}) {
    mpq_class x = hli::parse_decimal(text);
    INFO("x = " << text);
    Interval c = shifted_correction(x, 0);
    Interval lower = recip(Interval(24) * sqr(Interval::from_rational(x + 1)));
    Interval upper = recip(Interval(24) * sqr(Interval::from_rational(x + mpq_class(1, 2))));
    CHECK(hli::certainly_less(lower, c));
    CHECK(hli::certainly_less(c, upper));
  }
}

TEST_CASE("shifted harmonic bound for random x and n", "[harmonic][property]") {
  hli::test::RationalSampler sample(2024);
  for (int i = 0; i < 50; ++i) {
    mpq_class x = sample.uniform(0, 100);
    for (unsigned n : {10u, 100u}) {
      INFO("x = " << x.get_str() << ", n = " << n);
      Interval c = shifted_correction(x, n);
      Interval lower = recip(Interval(24) * sqr(Interval::from_rational(x + n + 1)));
      Interval upper = recip(Interval(24) * sqr(Interval::from_rational(x + n + mpq_class(1, 2))));
      CHECK(hli::certainly_less_equal(lower, c));
      CHECK(hli::certainly_less_equal(c, upper));
    }
  }
}

TEST_CASE("li reproduces printed values", "[li]") {
  CHECK(consistent_with_printed(hli::li(mpq_class(2)), "1.045164"));
  Interval eg = hli::exp_gamma();
  CHECK(consistent_with_printed(hli::li(eg) / eg, "0.393102"));
  Interval e = exp(Interval(1));
  CHECK(consistent_with_printed(hli::li(e) / e, "0.697175"));
  CHECK(consistent_with_printed(hli::li_scaled(Interval(1) + hli::gamma_constant(), Interval(1)), "0.730170"));
  CHECK(consistent_with_printed(hli::li_scaled(Interval(-1), Interval(4)), "0.144367"));
  CHECK(hli::li_scaled(Interval(0), Interval(2)).overlaps(hli::li(mpq_class(2))));
}

TEST_CASE("li domain", "[li]") {
  CHECK_THROWS_AS(hli::li(mpq_class(1)), hli::DomainError);
  CHECK_THROWS_AS(hli::li(mpq_class(0)), hli::DomainError);
  CHECK_THROWS_AS(hli::li(mpq_class(-2)), hli::DomainError);
  CHECK_THROWS_AS(hli::li_scaled(Interval(0), Interval(1)), hli::DomainError);
}

TEST_CASE("sign of li changes only at mu", "[li][property]") {
  mpq_class mu_lo = hli::parse_decimal("1.451369234883");
  mpq_class offset(1, 1000000);
  for (const char* x : {"1.0001", "1.1", "1.3", "1.45"}) CHECK(hli::li(hli::parse_decimal(x)).is_negative());
  CHECK(hli::li(mpq_class(mu_lo - offset)).is_negative());
  CHECK(hli::li(mpq_class(mu_lo + offset)).is_positive());
  for (const char* x : {"2", "10", "1000"}) CHECK(hli::li(hli::parse_decimal(x)).is_positive());
  for (const char* x : {"0.001", "0.1", "0.5", "0.9"}) CHECK(hli::li(hli::parse_decimal(x)).is_negative());
  CHECK(hli::li(hli::mu_constant()).contains_zero());
}

TEST_CASE("li agrees with quadrature of the exponential integral", "[li][oracle]") {
  for (const char* text : {"2", "e", "4", "10"}) {
    Interval x = std::string(text) == "e" ? exp(Interval(1)) : q(text);
    Real50 oracle = hli::test::li_quadrature(hli::test::to_real(x));
    INFO("x = " << text);
    CHECK(hli::test::close_relative(hli::test::to_real(hli::li(x)), oracle, 12));
  }
}

TEST_CASE("exponential integral at negative arguments", "[li]") {
  // reference from an independent high-precision evaluation
  CHECK(hli::ei(Interval(-30)).overlaps(
      Interval::from_bounds(hli::parse_decimal("-3.02155201068881254481582504515369792117e-15"),
                            hli::parse_decimal("-3.02155201068881254481582504515369792116e-15"))));
  CHECK_THROWS_AS(hli::ei(Interval(0)), hli::DomainError);
}

TEST_CASE("Ramanujan-Soldner constant", "[constants]") {
  Interval mu13 = hli::soldner_mu(13);
  CHECK(consistent_with_printed(mu13, "1.451369234883"));
  CHECK(mu13.width() <= 1e-12);
  CHECK(consistent_with_printed(recip(log(mu13)), "2.684510350820"));
  Interval mid = hli::li(mu13.midpoint());
  CHECK((mid.contains_zero() || mid.width() < 1e-13));
  CHECK(hli::soldner_mu(40).overlaps(
      Interval::from_bounds(hli::parse_decimal("1.451369234883381050283968485892027449493"),
                            hli::parse_decimal("1.451369234883381050283968485892027449494"))));
}

TEST_CASE("maximiser of li(x)/x", "[constants]") {
  Interval a13 = hli::alpha_star(13);
  CHECK(consistent_with_printed(a13, "3.846467717046"));
  CHECK(consistent_with_printed(log(a13), "1.347155251069"));
  Interval a = hli::alpha_star_constant();
  CHECK(hli::li(a).overlaps(a / log(a)));
  CHECK(a.overlaps(Interval::from_bounds(hli::parse_decimal("3.846467717046856326798694570353156132904"),
                                         hli::parse_decimal("3.846467717046856326798694570353156132905"))));
}

TEST_CASE("tail integral", "[tail]") {
  Interval one(1);
  Interval t11 = hli::tail_integral(one, one);
  CHECK(hli::certainly_less(Interval(-1), t11));
  CHECK(hli::certainly_less(t11, one));
  CHECK(hli::certainly_less(lemma_partial_sum(one, one, 3), t11));
  CHECK(hli::certainly_less(t11, lemma_partial_sum(one, one, 2)));

  Interval e = exp(Interval(1));
  Real50 oracle = hli::test::tail_quadrature(hli::test::to_real(e), 0);
  CHECK(hli::test::close_relative(hli::test::to_real(hli::tail_integral(e, Interval(0))), oracle, 10));

  CHECK_THROWS_AS(hli::tail_integral(Interval(1), Interval(0)), hli::DomainError);
  CHECK_THROWS_AS(hli::tail_integral(Interval(0), Interval(1)), hli::DomainError);
}

TEST_CASE("tail integral agrees with quadrature at random points", "[tail][oracle]") {
  hli::test::RationalSampler sample(77);
  for (int i = 0; i < 20; ++i) {
    mpq_class r = sample.uniform(mpq_class(1, 2), 200);
    mpq_class t = sample.uniform(-3, 5);
    Interval ir = Interval::from_rational(r);
    Interval it = Interval::from_rational(t);
    if (!(it + log(ir) - Interval::from_rational(mpq_class(1, 10))).is_positive()) continue;
    INFO("r = " << r.get_str() << ", t = " << t.get_str());
    Real50 oracle = hli::test::tail_quadrature(hli::test::to_real(r), hli::test::to_real(t));
    CHECK(hli::test::close_relative(hli::test::to_real(hli::tail_integral(ir, it)), oracle, 10));
  }
}

TEST_CASE("tail integral is positive", "[tail][property]") {
  hli::test::RationalSampler sample(101);
  int tested = 0;
  while (tested < 100) {
    Interval r = Interval::from_rational(sample.uniform(mpq_class(1, 10), 1000));
    Interval t = Interval::from_rational(sample.uniform(-5, 15));
    if (!(t + log(r) - Interval::from_rational(mpq_class(1, 10))).is_positive()) continue;
    ++tested;
    REQUIRE(hli::tail_integral(r, t).is_positive());
  }
}

TEST_CASE("tail integral lies between alternating partial sums", "[tail][property]") {
  hli::test::RationalSampler sample(303);
  for (int i = 0; i < 30; ++i) {
    Interval r = Interval::from_rational(sample.uniform(1, 100));
    Interval t = Interval::from_rational(sample.uniform(mpq_class(1, 2), 10));
    Interval u = t + log(r);
    Interval tail = hli::tail_integral(r, t);
    for (int n : {2, 4}) {
      INFO("n = " << n);
      CHECK(hli::certainly_less(lemma_partial_sum(r, u, n + 1), tail));
      CHECK(hli::certainly_less(tail, lemma_partial_sum(r, u, n)));
    }
  }
}

TEST_CASE("li difference bracket", "[li]") {
  auto b = hli::li_difference_bounds(Interval(2), Interval(3), Interval(0));
  CHECK(b.lower.overlaps(recip(log(q("2.5")))));
  CHECK(b.upper.overlaps(recip(log(Interval(2)))));
  Interval diff = hli::li(mpq_class(3)) - hli::li(mpq_class(2));
  CHECK(hli::certainly_less(b.lower, diff));
  CHECK(hli::certainly_less(diff, b.upper));

  Interval x(5);
  auto narrow = hli::li_difference_bounds(x, x + q("1e-8"), Interval(1));
  CHECK(hli::test::close_relative(hli::test::to_real(narrow.lower / narrow.upper), 1, 8));

  CHECK_THROWS_AS(hli::li_difference_bounds(Interval(3), Interval(2), Interval(0)), hli::DomainError);
  CHECK_THROWS_AS(hli::li_difference_bounds(Interval(2), Interval(3), Interval(-1)), hli::DomainError);
}
