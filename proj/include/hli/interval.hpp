// SPDX-License-Identifier: Apache-2.0
//
// Outward-rounded interval arithmetic over MPFR.  Every operation returns an
// enclosure of the exact image of its operands, rounded to the calling
// thread's working precision.
#ifndef HLI_INTERVAL_HPP
#define HLI_INTERVAL_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "hli/error.hpp"
#include "hli/precision.hpp"

namespace hli {

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  Mpfr(const Mpfr& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Mpfr(Mpfr&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Mpfr& operator=(const Mpfr& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace detail

class Interval {
 public:
  /// The point interval [0, 0].
  Interval() : lo_(current_bits()), hi_(current_bits()) {
    mpfr_set_zero(lo_.get(), 1);
    mpfr_set_zero(hi_.get(), 1);
  }

  Interval(long long value) : lo_(current_bits()), hi_(current_bits()) {  // NOLINT
    static_assert(sizeof(long) == sizeof(long long), "LP64 platform expected");
    mpfr_set_si(lo_.get(), static_cast<long>(value), MPFR_RNDD);
    mpfr_set_si(hi_.get(), static_cast<long>(value), MPFR_RNDU);
  }
  Interval(int value) : Interval(static_cast<long long>(value)) {}  // NOLINT
  Interval(long value) : Interval(static_cast<long long>(value)) {}  // NOLINT

  static Interval from_integer(const mpz_class& z) {
    Interval r = blank();
    mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  static Interval from_rational(const mpq_class& q) {
    Interval r = blank();
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  /// Encloses a binary double exactly.
  static Interval from_double(double v) {
    Interval r = blank();
    mpfr_set_d(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), v, MPFR_RNDU);
    return r;
  }

  /// [lo, hi] from two rationals; throws if lo > hi.
  static Interval from_bounds(const mpq_class& lo, const mpq_class& hi) {
    if (lo > hi) {
      throw DomainError("interval bounds out of order");
    }
    Interval r = blank();
    mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static Interval hull(const Interval& a, const Interval& b) {
    Interval r = blank();
    mpfr_min(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }

  static Interval pi() {
    Interval r = blank();
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
  }

  /// Enclosure of log 2 (exact MPFR constant with directed rounding).
  static Interval log2() {
    Interval r = blank();
    mpfr_const_log2(r.lo_.get(), MPFR_RNDD);
    mpfr_const_log2(r.hi_.get(), MPFR_RNDU);
    return r;
  }

  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }

  double lo_double() const { return mpfr_get_d(lo(), MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi(), MPFR_RNDU); }
  double mid_double() const { return 0.5 * (mpfr_get_d(lo(), MPFR_RNDN) + mpfr_get_d(hi(), MPFR_RNDN)); }

  /// Upper bound on hi - lo as a double.
  double width() const {
    detail::Mpfr w(std::max(mpfr_get_prec(lo()), mpfr_get_prec(hi())) + 2);
    mpfr_sub(w.get(), hi(), lo(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
  }

  /// Exact midpoint (computed with one extra bit).
  Interval midpoint() const {
    mpfr_prec_t p = std::max(mpfr_get_prec(lo()), mpfr_get_prec(hi())) + 1;
    detail::Mpfr m(p);
    mpfr_add(m.get(), lo(), hi(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    Interval r = blank(p);
    mpfr_set(r.lo_.get(), m.get(), MPFR_RNDN);
    mpfr_set(r.hi_.get(), m.get(), MPFR_RNDN);
    return r;
  }

  mpq_class lo_rational() const { return to_rational(lo()); }
  mpq_class hi_rational() const { return to_rational(hi()); }

  bool is_point() const { return mpfr_equal_p(lo(), hi()) != 0; }
  bool is_positive() const { return mpfr_sgn(lo()) > 0; }
  bool is_negative() const { return mpfr_sgn(hi()) < 0; }
  bool is_nonnegative() const { return mpfr_sgn(lo()) >= 0; }
  bool contains_zero() const { return mpfr_sgn(lo()) <= 0 && mpfr_sgn(hi()) >= 0; }

  /// +1 or -1 when the sign is certain, 0 when the enclosure meets zero.
  int certain_sign() const {
    if (is_positive()) return 1;
    if (is_negative()) return -1;
    return 0;
  }

  bool contains(const mpq_class& q) const {
    mpq_class l = lo_rational();
    mpq_class h = hi_rational();
    return l <= q && q <= h;
  }

  bool contains(const Interval& other) const {
    return mpfr_lessequal_p(lo(), other.lo()) && mpfr_lessequal_p(other.hi(), hi());
  }

  bool overlaps(const Interval& other) const {
    return mpfr_lessequal_p(lo(), other.hi()) && mpfr_lessequal_p(other.lo(), hi());
  }

  /// Lower endpoint rounded down to `decimals` places after the point.
  std::string lower_decimal(int decimals) const { return to_fixed(lo(), decimals, false); }
  /// Upper endpoint rounded up to `decimals` places after the point.
  std::string upper_decimal(int decimals) const { return to_fixed(hi(), decimals, true); }

  /// Endpoints in scientific notation with `digits` after the point, rounded outward.
  std::string lower_scientific(int digits) const { return to_scientific(lo(), digits, MPFR_RNDD); }
  std::string upper_scientific(int digits) const { return to_scientific(hi(), digits, MPFR_RNDU); }

  /// Re-rounds both endpoints outward to `bits` of precision.
  Interval rounded(mpfr_prec_t bits) const {
    Interval r = blank(bits);
    mpfr_set(r.lo_.get(), lo(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi(), MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& a) {
    Interval r = blank();
    mpfr_neg(r.lo_.get(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), a.lo(), MPFR_RNDU);
    return r;
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r = blank();
    mpfr_add(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r = blank();
    mpfr_sub(r.lo_.get(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    Interval r = blank();
    if (a.is_nonnegative() && b.is_nonnegative()) {
      mpfr_mul(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
      mpfr_mul(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
      return r;
    }
    mpfr_prec_t p = current_bits();
    detail::Mpfr t(p);
    mpfr_srcptr as[2] = {a.lo(), a.hi()};
    mpfr_srcptr bs[2] = {b.lo(), b.hi()};
    mpfr_set_inf(r.lo_.get(), 1);
    mpfr_set_inf(r.hi_.get(), -1);
    for (auto x : as) {
      for (auto y : bs) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
      }
    }
    return r;
  }

  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) {
      throw DomainError("interval division by an enclosure containing zero");
    }
    Interval r = blank();
    mpfr_prec_t p = current_bits();
    detail::Mpfr t(p);
    mpfr_srcptr as[2] = {a.lo(), a.hi()};
    mpfr_srcptr bs[2] = {b.lo(), b.hi()};
    mpfr_set_inf(r.lo_.get(), 1);
    mpfr_set_inf(r.hi_.get(), -1);
    for (auto x : as) {
      for (auto y : bs) {
        mpfr_div(t.get(), x, y, MPFR_RNDD);
        mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x, y, MPFR_RNDU);
        mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
      }
    }
    return r;
  }

  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }
  Interval& operator/=(const Interval& b) { return *this = *this / b; }

  friend Interval recip(const Interval& a) {
    if (a.contains_zero()) {
      throw DomainError("reciprocal of an enclosure containing zero");
    }
    Interval r = blank();
    mpfr_ui_div(r.lo_.get(), 1, a.hi(), MPFR_RNDD);
    mpfr_ui_div(r.hi_.get(), 1, a.lo(), MPFR_RNDU);
    return r;
  }

  friend Interval abs(const Interval& a) {
    if (a.is_nonnegative()) return a.rounded(current_bits());
    if (mpfr_sgn(a.hi()) <= 0) return -a;
    Interval r = blank();
    mpfr_set_zero(r.lo_.get(), 1);
    if (mpfr_cmpabs(a.lo(), a.hi()) > 0) {
      mpfr_neg(r.hi_.get(), a.lo(), MPFR_RNDU);
    } else {
      mpfr_set(r.hi_.get(), a.hi(), MPFR_RNDU);
    }
    return r;
  }

  friend Interval pow_int(const Interval& a, long n) {
    if (n == 0) return Interval(1);
    if (n < 0) return recip(pow_int(a, -n));
    Interval r = blank();
    if (n % 2 == 0) {
      Interval m = abs(a);
      mpfr_pow_si(r.lo_.get(), m.lo(), n, MPFR_RNDD);
      mpfr_pow_si(r.hi_.get(), m.hi(), n, MPFR_RNDU);
    } else {
      mpfr_pow_si(r.lo_.get(), a.lo(), n, MPFR_RNDD);
      mpfr_pow_si(r.hi_.get(), a.hi(), n, MPFR_RNDU);
    }
    return r;
  }

  friend Interval sqr(const Interval& a) { return pow_int(a, 2); }

  friend Interval sqrt(const Interval& a) {
    if (mpfr_sgn(a.lo()) < 0) {
      throw DomainError("sqrt of an enclosure with a negative part");
    }
    Interval r = blank();
    mpfr_sqrt(r.lo_.get(), a.lo(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), a.hi(), MPFR_RNDU);
    return r;
  }

  friend Interval log(const Interval& a) {
    if (!a.is_positive()) {
      throw DomainError("log of an enclosure that is not strictly positive");
    }
    Interval r = blank();
    mpfr_log(r.lo_.get(), a.lo(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), a.hi(), MPFR_RNDU);
    return r;
  }

  friend Interval exp(const Interval& a) {
    Interval r = blank();
    mpfr_exp(r.lo_.get(), a.lo(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), a.hi(), MPFR_RNDU);
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Interval& a) {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "[%.20RDe, %.20RUe]", a.lo(), a.hi());
    return os << buf;
  }

 private:
  Interval(mpfr_prec_t bits, int) : lo_(bits), hi_(bits) {}

  static Interval blank(mpfr_prec_t bits = current_bits()) { return Interval(bits, 0); }

  static mpq_class to_rational(mpfr_srcptr v) {
    if (!mpfr_number_p(v)) {
      throw DomainError("non-finite interval endpoint");
    }
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
    mpq_class q(m);
    if (e >= 0) {
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return q;
  }

  static std::string to_scientific(mpfr_srcptr v, int digits, mpfr_rnd_t rnd) {
    char buf[256];
    mpfr_snprintf(buf, sizeof buf, "%.*R*e", digits, rnd, v);
    return buf;
  }

  static std::string to_fixed(mpfr_srcptr v, int decimals, bool up) {
    mpq_class q = to_rational(v);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
    mpq_class scaled = q * scale;
    mpz_class z;
    if (up) {
      mpz_cdiv_q(z.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    } else {
      mpz_fdiv_q(z.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    }
    bool negative = z < 0;
    std::string digits = (negative ? mpz_class(-z) : z).get_str();
    if (decimals > 0) {
      if (static_cast<int>(digits.size()) <= decimals) {
        digits.insert(0, static_cast<std::size_t>(decimals + 1 - static_cast<int>(digits.size())), '0');
      }
      digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
    }
    return negative ? "-" + digits : digits;
  }

  detail::Mpfr lo_;
  detail::Mpfr hi_;
};

/// a < b holds for every pair of points in the two enclosures.
inline bool certainly_less(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi(), b.lo()) != 0; }

inline bool certainly_less_equal(const Interval& a, const Interval& b) {
  return mpfr_lessequal_p(a.hi(), b.lo()) != 0;
}

inline Interval intersect(const Interval& a, const Interval& b) {
  if (!a.overlaps(b)) {
    throw DomainError("intersection of disjoint enclosures");
  }
  mpq_class lo = std::max(a.lo_rational(), b.lo_rational());
  mpq_class hi = std::min(a.hi_rational(), b.hi_rational());
  return Interval::from_bounds(lo, hi);
}

/// floor(x) when every point of the enclosure has the same floor.
inline std::optional<mpz_class> certain_floor(const Interval& x) {
  mpz_class a;
  mpz_class b;
  mpfr_get_z(a.get_mpz_t(), x.lo(), MPFR_RNDD);
  mpfr_get_z(b.get_mpz_t(), x.hi(), MPFR_RNDD);
  if (a != b) return std::nullopt;
  return a;
}

/// ceil(x) when every point of the enclosure has the same ceiling.
inline std::optional<mpz_class> certain_ceil(const Interval& x) {
  mpz_class a;
  mpz_class b;
  mpfr_get_z(a.get_mpz_t(), x.lo(), MPFR_RNDU);
  mpfr_get_z(b.get_mpz_t(), x.hi(), MPFR_RNDU);
  if (a != b) return std::nullopt;
  return a;
}

/// Parses a decimal numeral such as "-12.5e-3" into an exact rational.
inline mpq_class parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) {
    throw DomainError("malformed decimal '" + std::string(text) + "'");
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::string exp_text(text.substr(i));
    if (exp_text.empty()) {
      throw DomainError("malformed exponent in '" + std::string(text) + "'");
    }
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed exponent in '" + std::string(text) + "'");
    }
    if (used != exp_text.size() || e > 100000 || e < -100000) {
      throw DomainError("malformed exponent in '" + std::string(text) + "'");
    }
    exponent += e;
    i = text.size();
  }
  if (i != text.size()) {
    throw DomainError("malformed decimal '" + std::string(text) + "'");
  }
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class q = exponent < 0 ? mpq_class(mantissa, scale) : mpq_class(mantissa * scale);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

inline Interval decimal_interval(std::string_view text) { return Interval::from_rational(parse_decimal(text)); }

}  // namespace hli

#endif  // HLI_INTERVAL_HPP
