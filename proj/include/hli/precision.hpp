// SPDX-License-Identifier: Apache-2.0
#ifndef HLI_PRECISION_HPP
#define HLI_PRECISION_HPP

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>

#include <mpfr.h>

#include "hli/error.hpp"

namespace hli {

struct PrecisionConfig {
  int working_digits = 40;
  int max_refine_digits = 200;

  void validate() const {
    if (working_digits < 15) {
      throw DomainError("working_digits must be at least 15");
    }
    if (max_refine_digits < working_digits) {
      throw DomainError("max_refine_digits must be >= working_digits");
    }
  }
};

namespace detail {

inline std::atomic<int>& global_working_digits() {
  static std::atomic<int> digits{40};
  return digits;
}

inline std::atomic<int>& global_max_refine_digits() {
  static std::atomic<int> digits{200};
  return digits;
}

// 0 means "follow the global working precision".
inline int& thread_digits() {
  thread_local int digits = 0;
  return digits;
}

}  // namespace detail

inline PrecisionConfig precision_config() {
  return {detail::global_working_digits().load(), detail::global_max_refine_digits().load()};
}

inline void set_precision_config(const PrecisionConfig& cfg) {
  cfg.validate();
  detail::global_working_digits().store(cfg.working_digits);
  detail::global_max_refine_digits().store(cfg.max_refine_digits);
}

/// Decimal digits that new interval results are rounded to on this thread.
inline int current_digits() {
  int d = detail::thread_digits();
  return d > 0 ? d : detail::global_working_digits().load();
}

inline int max_refine_digits() { return detail::global_max_refine_digits().load(); }

/// Binary precision carrying `digits` decimal digits plus guard bits.
inline mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 16;
}

inline mpfr_prec_t current_bits() { return digits_to_bits(current_digits()); }

/// Temporarily changes the working precision of the calling thread.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits) : saved_(detail::thread_digits()) {
    if (digits < 1) {
      throw DomainError("precision must be positive");
    }
    detail::thread_digits() = digits;
  }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;
  ~PrecisionScope() { detail::thread_digits() = saved_; }

 private:
  int saved_;
};

/// Reads HARMONIC_LI_DIGITS; a command-line flag, when given, takes priority.
inline std::optional<int> digits_from_environment() {
  const char* env = std::getenv("HARMONIC_LI_DIGITS");
  if (env == nullptr || *env == '\0') {
    return std::nullopt;
  }
  try {
    std::size_t used = 0;
    int value = std::stoi(env, &used);
    if (used != std::string(env).size()) {
      return std::nullopt;
    }
    return value;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace hli

#endif  // HLI_PRECISION_HPP
