// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the test suites: printed-digit comparisons, seeded random
// rationals and Boost-based floating oracles that share no code with the
// library's series and sieve implementations.
#ifndef HLI_TEST_SUPPORT_HPP
#define HLI_TEST_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>

#include <gmpxx.h>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hli/interval.hpp"

namespace hli::test {

using Real50 = boost::multiprecision::cpp_bin_float_50;

inline int decimals_of(const std::string& text) {
  auto dot = text.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
}

inline mpq_class unit_in_last_place(const std::string& text) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(decimals_of(text)));
  return mpq_class(1, p);
}

/// True when every point of `x` truncates or rounds to the printed digits,
/// i.e. x lies inside [p - u/2, p + u) with u one unit in the last place.
inline bool matches_printed(const Interval& x, const std::string& printed) {
  mpq_class p = parse_decimal(printed);
  mpq_class u = unit_in_last_place(printed);
  return x.lo_rational() >= p - u / 2 && x.hi_rational() < p + u;
}

/// True when `x` does not exclude the printed digits: it meets [p - u/2, p + u).
inline bool consistent_with_printed(const Interval& x, const std::string& printed) {
  mpq_class p = parse_decimal(printed);
  mpq_class u = unit_in_last_place(printed);
  return x.hi_rational() >= p - u / 2 && x.lo_rational() < p + u;
}

/// Certified upper bound `x.hi` rounds up to the printed digits: p - u < x.hi <= p.
inline bool rounds_up_to(const Interval& x, const std::string& printed) {
  mpq_class p = parse_decimal(printed);
  return x.hi_rational() <= p && x.hi_rational() > p - unit_in_last_place(printed);
}

/// Certified lower bound `x.lo` rounds down to the printed digits: p <= x.lo < p + u.
inline bool rounds_down_to(const Interval& x, const std::string& printed) {
  mpq_class p = parse_decimal(printed);
  return x.lo_rational() >= p && x.lo_rational() < p + unit_in_last_place(printed);
}

/// Lower bound in a "value >" column: it may not undercut the printed value by
/// more than `slack`.
inline bool lower_at_least(const Interval& lower, const std::string& printed, const mpq_class& slack) {
  return lower.lo_rational() >= parse_decimal(printed) - slack;
}

inline bool upper_at_most(const Interval& upper, const std::string& printed, const mpq_class& slack) {
  return upper.hi_rational() <= parse_decimal(printed) + slack;
}

/// Deterministic source of random rationals.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on a grid of step 1/den inside (lo, hi).
  mpq_class uniform(const mpq_class& lo, const mpq_class& hi, long den = 1000003) {
    mpq_class span = (hi - lo) * den;
    long steps = static_cast<long>(span.get_d());
    std::uniform_int_distribution<long> pick(1, std::max(1L, steps - 1));
    mpq_class q = lo + mpq_class(pick(engine_), den);
    q.canonicalize();
    return q;
  }

  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    std::uniform_int_distribution<std::uint64_t> pick(lo, hi);
    return pick(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

inline Real50 to_real(const mpq_class& q) {
  return Real50(q.get_num().get_str()) / Real50(q.get_den().get_str());
}

inline Real50 to_real(const Interval& x) {
  return (to_real(x.lo_rational()) + to_real(x.hi_rational())) / 2;
}

/// li(x) = gamma + log|log x| + int_0^{log x} (e^u - 1)/u du by tanh-sinh quadrature.
inline Real50 li_quadrature(const Real50& x) {
  using boost::multiprecision::expm1;
  using boost::multiprecision::log;
  Real50 z = log(x);
  boost::math::quadrature::tanh_sinh<Real50> integrator;
  auto f = [](const Real50& u) { return u == 0 ? Real50(1) : Real50(expm1(u) / u); };
  Real50 integral = z > 0 ? integrator.integrate(f, Real50(0), z) : Real50(-integrator.integrate(f, z, Real50(0)));
  return boost::math::constants::euler<Real50>() + log(abs(z)) + integral;
}

/// int_r^inf dx/(x^2 (t + log x)^2) with x = r e^s.
inline Real50 tail_quadrature(const Real50& r, const Real50& t) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  Real50 u = t + log(r);
  boost::math::quadrature::exp_sinh<Real50> integrator;
  auto f = [&](const Real50& s) {
    Real50 d = u + s;
    return Real50(exp(-s) / (d * d));
  };
  return integrator.integrate(f) / r;
}

inline bool close_relative(const Real50& a, const Real50& b, double digits) {
  using boost::multiprecision::abs;
  using boost::multiprecision::pow;
  Real50 scale = abs(b) > 1 ? abs(b) : Real50(1);
  return abs(a - b) <= pow(Real50(10), -digits) * scale;
}

}  // namespace hli::test

#endif  // HLI_TEST_SUPPORT_HPP
