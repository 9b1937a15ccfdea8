// SPDX-License-Identifier: Apache-2.0
//
// Certified harmonic numbers, the exponential and logarithmic integrals, and
// the closed-form tail integrals used by the beta bounds.
#ifndef HLI_SPECIAL_FUNCTIONS_HPP
#define HLI_SPECIAL_FUNCTIONS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "hli/constants.hpp"
#include "hli/error.hpp"
#include "hli/interval.hpp"
#include "hli/precision.hpp"
#include "hli/rational.hpp"

namespace hli {

struct HarmonicValue {
  mpq_class argument;
  Interval value;
  std::optional<mpq_class> exact;
};

/// H_n; exact for n <= 10^4, interval accumulation beyond that.
inline HarmonicValue harmonic_int(std::uint64_t n) {
  if (n <= ExactHarmonicTable::kExactLimit) {
    mpq_class h = harmonic_exact(n);
    return {mpq_class(n), Interval::from_rational(h), h};
  }
  Interval acc = Interval::from_rational(harmonic_exact(ExactHarmonicTable::kExactLimit));
  for (std::uint64_t k = ExactHarmonicTable::kExactLimit + 1; k <= n; ++k) {
    acc += recip(Interval(static_cast<long long>(k)));
  }
  return {mpq_class(n), acc, std::nullopt};
}

/// H_x = Psi(x+1) + gamma for real x > -1.  The argument is shifted by n so
/// that the midpoint-shifted Bernoulli bracket is narrow at working precision,
/// then H_x = H_{x+n} - sum_{k=1}^{n} 1/(x+k).
inline Interval harmonic_real(const mpq_class& x) {
  if (x <= -1) {
    throw DomainError("harmonic_real requires x > -1");
  }
  const int digits = current_digits();
  Interval result;
  {
    PrecisionScope scope(digits + 4);
    const unsigned long shift = static_cast<unsigned long>(digits) + 10;
    mpq_class y = x + mpq_class(2 * shift + 1, 2);
    auto [below, above] = detail::shifted_series_bracket(y, detail::pow10_inverse(digits + 3));
    Interval h_shifted = gamma_constant() + log(Interval::from_rational(y)) + Interval::from_bounds(below, above);
    mpq_class reciprocal_sum = 0;
    for (unsigned long k = 1; k <= shift; ++k) {
      reciprocal_sum += 1 / (x + k);
    }
    result = h_shifted - Interval::from_rational(reciprocal_sum);
  }
  return result.rounded(current_bits());
}

/// Exponential integral Ei(z) = gamma + log|z| + sum_{k>=1} z^k/(k k!) for
/// real z != 0.  The series is summed at raised precision (cancellation for
/// negative z costs about 0.87|z| digits) and truncated once the term ratio
/// is below 1/2, with the remainder enclosed by twice the first omitted term.
inline Interval ei(const Interval& z) {
  if (z.contains_zero()) {
    throw DomainError("Ei is singular at 0");
  }
  const double magnitude = std::max(std::fabs(z.lo_double()), std::fabs(z.hi_double()));
  if (!(magnitude <= 1.0e6)) {
    throw DomainError("Ei argument too large for the power series");
  }
  const int outer_bits = static_cast<int>(current_bits());
  const int digits = current_digits();
  const int extra = (z.is_negative() ? static_cast<int>(std::ceil(0.87 * magnitude)) : 2) + 10;
  Interval result;
  {
    PrecisionScope scope(digits + extra);
    Interval zz = z.rounded(current_bits());
    mpfr_prec_t tol_bits = current_bits();
    Interval power(1);
    Interval sum;
    for (long k = 1;; ++k) {
      power = power * zz / Interval(k);
      Interval term = power / Interval(k);
      sum += term;
      // once k+1 > 2|z| every later ratio |z| j/(j+1)^2 is below 1/2
      if (static_cast<double>(k + 1) > 2.0 * magnitude + 1.0) {
        Interval next = abs(power * zz / Interval((k + 1) * (k + 1)));
        if (mpfr_get_exp(next.hi()) < -static_cast<mpfr_exp_t>(tol_bits) || mpfr_zero_p(next.hi())) {
          Interval bound = next + next;
          sum += Interval::hull(-bound, bound);
          break;
        }
      }
      if (k > 100000) {
        throw PrecisionExceeded("Ei series did not converge");
      }
    }
    Interval log_abs = z.is_positive() ? log(zz) : log(-zz);
    result = gamma_constant() + log_abs + sum;
  }
  return result.rounded(static_cast<mpfr_prec_t>(outer_bits));
}

/// li(x) as the Cauchy principal value, via li(x) = Ei(log x).
inline Interval li(const Interval& x) {
  if (!x.is_positive()) {
    throw DomainError("li requires x > 0");
  }
  Interval lx = log(x);
  if (lx.contains_zero()) {
    throw DomainError("li is singular at x = 1");
  }
  return ei(lx);
}

inline Interval li(const mpq_class& x) { return li(Interval::from_rational(x)); }

/// li(e^t x)/e^t evaluated as Ei(t + log x)/e^t.
inline Interval li_scaled(const Interval& t, const Interval& x) {
  if (!x.is_positive()) {
    throw DomainError("li_scaled requires x > 0");
  }
  Interval arg = t + log(x);
  if (arg.contains_zero()) {
    throw DomainError("li_scaled argument e^t x equals 1");
  }
  if (std::max(std::fabs(arg.lo_double()), std::fabs(arg.hi_double())) > 1.0e6) {
    throw DomainError("li_scaled argument outside representable range");
  }
  return ei(arg) / exp(t);
}

namespace detail {

/// Certified bisection for the unique sign change of f on [a, b], where f is
/// negative at a and positive at b.  Signs are decided from interval
/// enclosures; an indeterminate sign raises the evaluation precision.
template <class F>
Interval bisect_root(F&& f, mpq_class a, mpq_class b, int digits, const char* what) {
  check_refine_digits(digits);
  mpq_class target = 10 * pow10_inverse(digits);
  int eval_digits = digits + 5;
  auto sign_at = [&](const mpq_class& x) {
    for (int d = eval_digits;; d *= 2) {
      if (d > max_refine_digits() + 10) {
        throw PrecisionExceeded(std::string("sign of ") + what + " undecidable at max_refine_digits");
      }
      PrecisionScope scope(d);
      int s = f(Interval::from_rational(x)).certain_sign();
      if (s != 0) return s;
    }
  };
  if (sign_at(a) >= 0 || sign_at(b) <= 0) {
    throw DomainError(std::string("bracket does not isolate ") + what);
  }
  while (b - a > target) {
    mpq_class m = (a + b) / 2;
    if (sign_at(m) < 0) {
      a = m;
    } else {
      b = m;
    }
  }
  PrecisionScope scope(digits + 5);
  return Interval::from_bounds(a, b);
}

inline ConstantCache& mu_cache() {
  static ConstantCache cache;
  return cache;
}

inline ConstantCache& alpha_cache() {
  static ConstantCache cache;
  return cache;
}

inline Interval soldner_mu_raw(int digits) {
  return bisect_root([](const Interval& x) { return li(x); }, mpq_class(14, 10), mpq_class(15, 10), digits,
                     "li near the Ramanujan-Soldner constant");
}

inline Interval alpha_star_raw(int digits) {
  return bisect_root([](const Interval& x) { return li(x) - x / log(x); }, mpq_class(35, 10), mpq_class(4), digits,
                     "li(x) - x/log x");
}

}  // namespace detail

/// Ramanujan-Soldner constant mu (positive zero of li), width <= 10^(1-digits).
inline Interval soldner_mu(int digits) {
  detail::check_refine_digits(digits);
  return detail::mu_cache().get(digits, [digits] { return detail::soldner_mu_raw(digits); });
}

/// mu at the calling thread's working precision.
inline Interval mu_constant() {
  int d = std::min(current_digits(), max_refine_digits());
  return detail::mu_cache().get(d, [d] { return detail::soldner_mu_raw(d); }).rounded(current_bits());
}

/// Unique solution alpha* of li(x) = x/log x (the maximiser of li(x)/x).
inline Interval alpha_star(int digits) {
  detail::check_refine_digits(digits);
  return detail::alpha_cache().get(digits, [digits] { return detail::alpha_star_raw(digits); });
}

inline Interval alpha_star_constant() {
  int d = std::min(current_digits(), max_refine_digits());
  return detail::alpha_cache().get(d, [d] { return detail::alpha_star_raw(d); }).rounded(current_bits());
}

/// int_r^inf dx / (x^2 (t + log x)^2) = e^t li(1/(r e^t)) + 1/(r (t + log r)).
inline Interval tail_integral(const Interval& r, const Interval& t) {
  if (!r.is_positive()) {
    throw DomainError("tail_integral requires r > 0");
  }
  Interval u = t + log(r);
  if (!u.is_positive()) {
    throw DomainError("tail_integral requires t + log r > 0");
  }
  return exp(t) * ei(-u) + recip(r * u);
}

struct LiDifferenceBounds {
  Interval lower;
  Interval upper;
};

/// Bracket for li(e^t y)/e^t - li(e^t x)/e^t from the concavity of
/// 1/(t + log u): (y-x)/(t + log((x+y)/2)) and (y-x)/(t + log x).
inline LiDifferenceBounds li_difference_bounds(const Interval& x, const Interval& y, const Interval& t) {
  if (!x.is_positive() || !certainly_less(x, y)) {
    throw DomainError("li_difference_bounds requires y > x > 0");
  }
  Interval base = t + log(x);
  if (!base.is_positive()) {
    throw DomainError("li_difference_bounds requires t > -log x");
  }
  Interval diff = y - x;
  Interval mid = (x + y) / Interval(2);
  return {diff / (t + log(mid)), diff / base};
}

}  // namespace hli

#endif  // HLI_SPECIAL_FUNCTIONS_HPP
