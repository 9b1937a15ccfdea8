// SPDX-License-Identifier: Apache-2.0
#ifndef HLI_RATIONAL_HPP
#define HLI_RATIONAL_HPP

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <vector>

#include <gmpxx.h>

#include "hli/error.hpp"

namespace hli {

/// Exact Bernoulli numbers B_0, B_1 = -1/2, B_2, ... generated by the
/// recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0.  Entries are appended once
/// and never modified.
class BernoulliTable {
 public:
  static BernoulliTable& instance() {
    static BernoulliTable table;
    return table;
  }

  /// B_{2k} for k >= 1.
  mpq_class even(unsigned k) {
    if (k == 0) {
      throw DomainError("bernoulli_even expects k >= 1");
    }
    std::lock_guard<std::mutex> lock(mutex_);
    extend_to(2 * k);
    return values_[2 * k];
  }

  std::size_t size() {
    std::lock_guard<std::mutex> lock(mutex_);
    return values_.size();
  }

 private:
  BernoulliTable() { values_.emplace_back(1); }

  void extend_to(unsigned m_max) {
    while (values_.size() <= m_max) {
      unsigned m = static_cast<unsigned>(values_.size());
      if (m > 1 && m % 2 == 1) {
        values_.emplace_back(0);
        continue;
      }
      // sum_{j<m} C(m+1, j) B_j, with the binomial updated incrementally
      mpz_class binom = 1;
      mpq_class acc = 0;
      for (unsigned j = 0; j < m; ++j) {
        if (sgn(values_[j]) != 0) acc += mpq_class(binom) * values_[j];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      mpq_class b = -acc / mpq_class(m + 1);
      b.canonicalize();
      values_.push_back(b);
    }
  }

  std::mutex mutex_;
  std::vector<mpq_class> values_;
};

inline mpq_class bernoulli_even(unsigned k) { return BernoulliTable::instance().even(k); }

/// Coefficient (1 - 2^{1-2k}) B_{2k} / (2k) of the midpoint-shifted
/// asymptotic series of H_{y-1/2} - gamma - log y in powers of 1/y^2.
inline mpq_class shifted_bernoulli_coefficient(unsigned k) {
  mpz_class pow2 = 1;
  pow2 <<= (2 * k - 1);
  mpq_class factor = 1 - mpq_class(1, pow2);
  mpq_class c = factor * bernoulli_even(k) / mpq_class(2 * k);
  c.canonicalize();
  return c;
}

/// Exact harmonic numbers H_0..H_n, n <= kExactLimit, appended on demand.
class ExactHarmonicTable {
 public:
  static constexpr std::uint64_t kExactLimit = 10000;

  static ExactHarmonicTable& instance() {
    static ExactHarmonicTable table;
    return table;
  }

  mpq_class get(std::uint64_t n) {
    if (n > kExactLimit) {
      throw DomainError("exact harmonic numbers are tabulated only up to 10^4");
    }
    std::lock_guard<std::mutex> lock(mutex_);
    while (values_.size() <= n) {
      mpq_class next = values_.back() + mpq_class(1, values_.size());
      next.canonicalize();
      values_.push_back(std::move(next));
    }
    return values_[n];
  }

 private:
  ExactHarmonicTable() { values_.emplace_back(0); }

  std::mutex mutex_;
  std::vector<mpq_class> values_;
};

inline mpq_class harmonic_exact(std::uint64_t n) { return ExactHarmonicTable::instance().get(n); }

}  // namespace hli

#endif  // HLI_RATIONAL_HPP
