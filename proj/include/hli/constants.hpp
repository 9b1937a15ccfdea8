// SPDX-License-Identifier: Apache-2.0
#ifndef HLI_CONSTANTS_HPP
#define HLI_CONSTANTS_HPP

#include <functional>
#include <map>
#include <mutex>
#include <string>

#include <gmpxx.h>

#include "hli/error.hpp"
#include "hli/interval.hpp"
#include "hli/precision.hpp"
#include "hli/rational.hpp"

namespace hli {

namespace detail {

/// Per-precision memo for constants; each digits level is computed once.
class ConstantCache {
 public:
  Interval get(int digits, const std::function<Interval()>& compute) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = values_.find(digits);
      if (it != values_.end()) return it->second;
    }
    Interval value = compute();
    std::lock_guard<std::mutex> lock(mutex_);
    return values_.emplace(digits, std::move(value)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, Interval> values_;
};

inline void check_refine_digits(int digits) {
  if (digits < 1) {
    throw DomainError("digits must be positive");
  }
  if (digits > max_refine_digits()) {
    throw PrecisionExceeded("requested " + std::to_string(digits) + " digits exceeds max_refine_digits (" +
                            std::to_string(max_refine_digits()) + ")");
  }
}

/// Encloses H_{y-1/2} - gamma - log y for rational y > 0 between two
/// consecutive partial sums of the shifted Bernoulli series, stopping once the
/// bracket is narrower than `tolerance`.
inline std::pair<mpq_class, mpq_class> shifted_series_bracket(const mpq_class& y, const mpq_class& tolerance) {
  mpq_class inv_y2 = 1 / (y * y);
  mpq_class power = 1;
  mpq_class partial = 0;
  mpq_class previous_term_abs = -1;
  for (unsigned k = 1; k < 1000; ++k) {
    power *= inv_y2;
    mpq_class term = shifted_bernoulli_coefficient(k) * power;
    mpq_class next_partial = partial + term;
    if (k % 2 == 0) {
      // partial = S_{k-1} with k-1 odd; next_partial = S_k.
      if (abs(term) < tolerance) {
        return {next_partial, partial};
      }
    }
    if (previous_term_abs >= 0 && abs(term) > previous_term_abs) {
      throw PrecisionExceeded("shifted Bernoulli series diverged before reaching tolerance");
    }
    previous_term_abs = abs(term);
    partial = next_partial;
  }
  throw PrecisionExceeded("shifted Bernoulli series did not reach tolerance");
}

inline mpq_class pow10_inverse(int digits) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  return mpq_class(1, p);
}

inline Interval euler_gamma_unchecked(int digits) {
  PrecisionScope scope(digits + 6);
  const unsigned long n = static_cast<unsigned long>(digits) + 10;
  mpq_class y(2 * n + 1, 2);
  auto [below, above] = shifted_series_bracket(y, pow10_inverse(digits + 3));
  mpq_class h = harmonic_exact(n);
  Interval lead = Interval::from_bounds(h - above, h - below);
  return lead - log(Interval::from_rational(y));
}

inline ConstantCache& gamma_cache() {
  static ConstantCache cache;
  return cache;
}

}  // namespace detail

/// Certified enclosure of the Euler-Mascheroni constant with width at most
/// 10^(1-digits), from an exact H_N and the two-sided shifted Bernoulli bound.
inline Interval euler_gamma(int digits) {
  detail::check_refine_digits(digits);
  return detail::gamma_cache().get(digits, [digits] { return detail::euler_gamma_unchecked(digits); });
}

/// gamma at the calling thread's working precision.
inline Interval gamma_constant() {
  int d = current_digits();
  return detail::gamma_cache().get(d, [d] { return detail::euler_gamma_unchecked(d); });
}

inline Interval exp_gamma() { return exp(gamma_constant()); }

}  // namespace hli

#endif  // HLI_CONSTANTS_HPP
