// SPDX-License-Identifier: Apache-2.0
//
// Riemann-hypothesis-equivalent inequalities comparing the prime density with
// harmonic partial sums, evaluated with three-valued certified verdicts.
#ifndef HLI_RH_VERIFIER_HPP
#define HLI_RH_VERIFIER_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "hli/discretized_li.hpp"
#include "hli/error.hpp"
#include "hli/interval.hpp"
#include "hli/precision.hpp"
#include "hli/prime_counter.hpp"
#include "hli/shift.hpp"

namespace hli {

enum class Verdict { holds, fails, indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

/// The four displayed inequalities: counting (1, 2) or density (3, 4) form,
/// with t + log n (1, 3) or H_n - gamma + t (2, 4) in the bound.
enum class InequalityForm { count_log = 1, count_harmonic = 2, density_log = 3, density_harmonic = 4 };

struct InequalityPreset {
  std::string id;
  Shift t;
  std::optional<std::uint64_t> sum_start;  // empty: start at R_t
  mpq_class lambda;
  std::optional<mpq_class> M;              // empty: 1/(8 pi)
  mpq_class alpha_exponent{1, 2};
  mpq_class C{2657};
  std::uint64_t n_threshold = 1;
  std::set<std::uint64_t> known_exceptions;
  InequalityForm form = InequalityForm::density_log;
  std::uint64_t proof_lo = 1;
  std::uint64_t proof_hi = 1;

  std::uint64_t start_index() const { return sum_start ? *sum_start : r_ceiling(t).R_t; }

  Interval m_value() const {
    if (M) return Interval::from_rational(*M);
    return recip(Interval(8) * Interval::pi());
  }

  void validate() const {
    if (n_threshold < 1) throw DomainError("n_threshold must be at least 1");
    if (M && *M <= 0) throw DomainError("M must be positive");
    if (lambda <= 0) throw DomainError("lambda must be positive");
  }
};

namespace presets {

inline InequalityPreset make(std::string id, const char* shift, std::optional<std::uint64_t> start,
                             const char* lambda, std::uint64_t threshold, std::uint64_t lo, std::uint64_t hi,
                             std::set<std::uint64_t> exceptions = {}) {
  InequalityPreset p;
  p.id = std::move(id);
  p.t = Shift::parse(shift);
  p.sum_start = start;
  p.lambda = parse_decimal(lambda);
  p.n_threshold = threshold;
  p.proof_lo = lo;
  p.proof_hi = hi;
  p.known_exceptions = std::move(exceptions);
  return p;
}

inline InequalityPreset rh5() { return make("rh5", "gamma", std::nullopt, "0.4986013304", 803, 803, 1491); }
inline InequalityPreset rh6() { return make("rh6", "gamma", 2, "1.4986013304", 1, 1, 1491); }
inline InequalityPreset rh6b() { return make("rh6b", "gamma+1", 1, "0.7509547014", 1, 1, 548); }
inline InequalityPreset rh7() { return make("rh7", "0", 2, "1.0956456993", 1427, 1427, 2657); }
inline InequalityPreset rh8a() { return make("rh8a", "log2", 1, "0.6026096358", 714, 714, 1328); }
inline InequalityPreset rh9() { return make("rh9", "1", 1, "0.7418976158", 1, 1, 977, {82}); }

inline std::vector<InequalityPreset> all() { return {rh5(), rh6(), rh6b(), rh7(), rh8a(), rh9()}; }

inline InequalityPreset by_id(const std::string& id) {
  for (auto& p : all()) {
    if (p.id == id) return p;
  }
  throw DomainError("unknown preset '" + id + "' (expected rh5, rh6, rh6b, rh7, rh8a or rh9)");
}

}  // namespace presets

struct CheckResult {
  std::string preset_id;
  std::uint64_t n = 0;
  std::uint64_t argument = 0;  // floor(e^t n)
  std::uint64_t prime_count = 0;
  Interval lhs;
  Interval rhs;
  Interval margin;
  Verdict verdict = Verdict::indeterminate;
  int digits = 0;
};

inline Verdict verdict_from_margin(const Interval& margin) {
  if (margin.is_positive()) return Verdict::holds;
  if (margin.is_negative()) return Verdict::fails;
  return Verdict::indeterminate;
}

/// floor(e^t n), raising precision until the enclosure of e^t n avoids integers.
inline std::uint64_t certified_floor_scaled(const Shift& t, std::uint64_t n) {
  auto to_u64 = [](const mpz_class& z) {
    if (z < 0 || z > mpz_class(static_cast<unsigned long>(PrimeCounter::kCap))) {
      throw LimitExceeded("e^t n exceeds the prime counting cap");
    }
    return static_cast<std::uint64_t>(z.get_ui());
  };
  if (auto e = t.exact_exp()) {
    mpq_class x = *e * n;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return to_u64(f);
  }
  for (int d = current_digits();; d = std::min(2 * d, max_refine_digits())) {
    PrecisionScope scope(d);
    if (auto f = certain_floor(t.exp_value() * Interval(static_cast<long long>(n)))) return to_u64(*f);
    if (d >= max_refine_digits()) break;
  }
  throw IntegerBoundary("e^t n indistinguishable from an integer at max_refine_digits");
}

/// Evaluates one preset at a fixed precision; cheap to reuse across n.
class InequalityEvaluator {
 public:
  explicit InequalityEvaluator(InequalityPreset preset)
      : preset_(std::move(preset)),
        digits_(current_digits()),
        ctx_(ShiftContext::for_sums(preset_.t, preset_.start_index())) {
    preset_.validate();
    t_ = preset_.t.value();
    t_minus_gamma_ = preset_.t.minus_gamma();
    exp_t_ = preset_.t.exp_value();
    Interval alpha = Interval::from_rational(preset_.alpha_exponent);
    m_ = preset_.m_value();
    exp_alpha_t_ = exp(alpha * t_);
    lambda_ = Interval::from_rational(preset_.lambda);
  }

  const InequalityPreset& preset() const { return preset_; }
  int digits() const { return digits_; }
  const ShiftContext& context() const { return ctx_; }

  /// Certified lhs and rhs for n, given pi(floor(e^t n)).
  CheckResult evaluate(std::uint64_t n, std::uint64_t argument, std::uint64_t prime_count) const {
    if (n == 0) throw DomainError("n must be positive");
    PrecisionScope scope(digits_);
    Interval nn(static_cast<long long>(n));
    Interval sum = n > ctx_.start() ? ctx_.partial_inverse_sum(n) : Interval(0);
    Interval pc(static_cast<long long>(prime_count));
    Interval n_alpha = n == 1 ? Interval(1) : exp(Interval::from_rational(preset_.alpha_exponent) * log(nn));
    bool harmonic = preset_.form == InequalityForm::count_harmonic || preset_.form == InequalityForm::density_harmonic;
    Interval growth = harmonic ? harmonic_int(n).value + t_minus_gamma_ : t_ + log(nn);
    // counting form: |pi(e^t n) - e^t S| < M e^{alpha t} n^alpha g(n) + lambda e^t
    Interval count_lhs = abs(pc - exp_t_ * sum);
    Interval count_rhs = m_ * exp_alpha_t_ * n_alpha * growth + lambda_ * exp_t_;
    CheckResult r;
    r.preset_id = preset_.id;
    r.n = n;
    r.argument = argument;
    r.prime_count = prime_count;
    r.digits = digits_;
    if (preset_.form == InequalityForm::count_log || preset_.form == InequalityForm::count_harmonic) {
      r.lhs = count_lhs;
      r.rhs = count_rhs;
    } else {
      // density form is the counting form divided by e^t n
      Interval scale = exp_t_ * nn;
      r.lhs = abs(pc / scale - sum / nn);
      r.rhs = m_ * exp_alpha_t_ / exp_t_ * n_alpha / nn * growth + lambda_ / nn;
    }
    r.margin = r.rhs - r.lhs;
    r.verdict = verdict_from_margin(r.margin);
    return r;
  }

  CheckResult evaluate(std::uint64_t n, PrimeCounter& counter) const {
    PrecisionScope scope(digits_);
    std::uint64_t x = certified_floor_scaled(preset_.t, n);
    return evaluate(n, x, counter.pi(x));
  }

 private:
  InequalityPreset preset_;
  int digits_;
  ShiftContext ctx_;
  Interval t_;
  Interval t_minus_gamma_;
  Interval exp_t_;
  Interval m_;
  Interval exp_alpha_t_;
  Interval lambda_;
};

/// Single evaluation with precision escalation on an indeterminate verdict.
inline CheckResult evaluate_inequality(const InequalityPreset& preset, std::uint64_t n, PrimeCounter& counter) {
  for (int d = current_digits();; d = std::min(2 * d, max_refine_digits())) {
    PrecisionScope scope(d);
    CheckResult r = InequalityEvaluator(preset).evaluate(n, counter);
    if (r.verdict != Verdict::indeterminate || d >= max_refine_digits()) return r;
  }
}

struct GenericBound {
  mpq_class M;
  mpq_class alpha_exponent{1, 2};
  mpq_class C{2657};
  Shift t;
  mpq_class r;
  mpq_class lambda;
  InequalityForm form = InequalityForm::density_log;

  InequalityPreset as_preset() const {
    InequalityPreset p;
    p.id = "custom";
    p.t = t;
    p.sum_start = ceiling_index(r);
    p.lambda = lambda;
    p.M = M;
    p.alpha_exponent = alpha_exponent;
    p.C = C;
    p.form = form;
    return p;
  }
};

/// Checks n >= C e^{-t} with certified arithmetic.
inline bool beyond_threshold(const mpq_class& C, const Shift& t, std::uint64_t n) {
  for (int d = current_digits();; d = std::min(2 * d, max_refine_digits())) {
    PrecisionScope scope(d);
    Interval bound = Interval::from_rational(C) / t.exp_value();
    Interval nn(static_cast<long long>(n));
    if (certainly_less_equal(bound, nn)) return true;
    if (certainly_less(nn, bound)) return false;
    if (d >= max_refine_digits()) break;
  }
  throw IntegerBoundary("cannot compare n with C e^{-t} at max_refine_digits");
}

/// Evaluates displayed inequality `form` for general (M, alpha, C, t, r, lambda).
inline CheckResult generic_bound_check(const GenericBound& b, std::uint64_t n, PrimeCounter& counter) {
  if (b.M <= 0) throw DomainError("M must be positive");
  if (b.C < 1) throw DomainError("C must be at least mu");
  require_admissible_start(b.t, ceiling_index(b.r));
  if (!beyond_threshold(b.C, b.t, n)) throw DomainError("generic_bound_check requires n >= C e^{-t}");
  return evaluate_inequality(b.as_preset(), n, counter);
}

struct ScanOptions {
  unsigned threads = 0;  // 0 selects the hardware concurrency
};

struct ScanReport {
  std::string preset_id;
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  std::vector<CheckResult> results;
  std::uint64_t holds = 0;
  std::uint64_t fails = 0;
  std::uint64_t indeterminate = 0;
  std::vector<std::uint64_t> violations;
  std::vector<std::uint64_t> unresolved;
  bool conditional = false;  // range leaves the directly verified proof range
  int digits = 0;
  double wall_seconds = 0;
  std::optional<std::string> cache_checksum;
};

/// Evaluates n_lo..n_hi, retrying indeterminate entries at doubled precision.
/// Results are merged in index order, so the report does not depend on threads.
inline ScanReport scan(const InequalityPreset& preset, std::uint64_t n_lo, std::uint64_t n_hi, PrimeCounter& counter,
                       ScanOptions options = {}) {
  if (n_lo == 0 || n_hi < n_lo) throw DomainError("scan range must satisfy 1 <= n_lo <= n_hi");
  auto started = std::chrono::steady_clock::now();
  ScanReport report;
  report.preset_id = preset.id;
  report.n_lo = n_lo;
  report.n_hi = n_hi;
  report.digits = current_digits();
  report.conditional = n_lo < preset.proof_lo || n_hi > preset.proof_hi;

  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) ns.push_back(n);
  std::vector<std::uint64_t> arguments;
  arguments.reserve(ns.size());
  for (std::uint64_t n : ns) arguments.push_back(certified_floor_scaled(preset.t, n));
  std::vector<std::uint64_t> counts = counter.pi_batch(arguments);

  report.results.resize(ns.size());
  std::vector<std::size_t> pending(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) pending[i] = i;

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  for (int d = current_digits(); !pending.empty(); d = std::min(2 * d, max_refine_digits())) {
    PrecisionScope scope(d);
    InequalityEvaluator evaluator(preset);
    if (n_hi > evaluator.context().start()) evaluator.context().partial_inverse_sum(n_hi);
    std::size_t chunks = std::min<std::size_t>(threads, pending.size());
    std::size_t per = (pending.size() + chunks - 1) / chunks;
    auto work = [&](std::size_t from, std::size_t to) {
      for (std::size_t j = from; j < to; ++j) {
        std::size_t i = pending[j];
        report.results[i] = evaluator.evaluate(ns[i], arguments[i], counts[i]);
      }
    };
    if (chunks <= 1) {
      work(0, pending.size());
    } else {
      std::vector<std::future<void>> futures;
      for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t from = c * per;
        std::size_t to = std::min(pending.size(), from + per);
        if (from < to) futures.push_back(std::async(std::launch::async, work, from, to));
      }
      for (auto& f : futures) f.get();
    }
    std::vector<std::size_t> still;
    for (std::size_t i : pending) {
      if (report.results[i].verdict == Verdict::indeterminate) still.push_back(i);
    }
    pending = std::move(still);
    if (d >= max_refine_digits()) break;
  }

  for (const CheckResult& r : report.results) {
    switch (r.verdict) {
      case Verdict::holds: ++report.holds; break;
      case Verdict::fails:
        ++report.fails;
        report.violations.push_back(r.n);
        break;
      case Verdict::indeterminate:
        ++report.indeterminate;
        report.unresolved.push_back(r.n);
        break;
    }
  }
  report.cache_checksum = counter.cache_checksum();
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

struct ResidualRow {
  std::uint64_t n = 0;
  Interval residual;    // pi(e^t n) - e^t sum_{k=N}^{n-1} 1/(H_k - gamma + t)
  Interval normalized;  // residual / (sqrt(n) H_n)
};

/// Residuals of the harmonic-sum approximation to pi(e^t n) for diagnostics.
inline std::vector<ResidualRow> residual_series(const Shift& t, std::uint64_t start, std::uint64_t n_lo,
                                                std::uint64_t n_hi, std::uint64_t stride, PrimeCounter& counter) {
  if (stride == 0) throw DomainError("stride must be positive");
  if (n_lo == 0 || n_hi < n_lo) throw DomainError("range must satisfy 1 <= n_lo <= n_hi");
  ShiftContext ctx = ShiftContext::for_sums(t, start);
  Interval et = t.exp_value();
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = n_lo; n <= n_hi; n += stride) ns.push_back(n);
  std::vector<std::uint64_t> arguments;
  for (std::uint64_t n : ns) arguments.push_back(certified_floor_scaled(t, n));
  std::vector<std::uint64_t> counts = counter.pi_batch(arguments);
  std::vector<ResidualRow> rows;
  rows.reserve(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    std::uint64_t n = ns[i];
    Interval sum = n > start ? ctx.partial_inverse_sum(n) : Interval(0);
    Interval residual = Interval(static_cast<long long>(counts[i])) - et * sum;
    Interval scale = sqrt(Interval(static_cast<long long>(n))) * harmonic_int(n).value;
    rows.push_back({n, residual, residual / scale});
  }
  return rows;
}

/// Bound on |normalized residual| implied by the harmonic counting form:
/// (M e^{alpha t} n^alpha (H_n - gamma + t) + lambda e^t) / (sqrt(n) H_n).
inline Interval residual_envelope(const Shift& t, std::uint64_t n, const Interval& M, const mpq_class& alpha_exponent,
                                  const Interval& lambda) {
  Interval nn(static_cast<long long>(n));
  Interval alpha = Interval::from_rational(alpha_exponent);
  Interval et = t.exp_value();
  Interval hn = harmonic_int(n).value;
  Interval bound = M * exp(alpha * t.value()) * exp(alpha * log(nn)) * (hn + t.minus_gamma()) + lambda * et;
  return bound / (sqrt(nn) * hn);
}

}  // namespace hli

#endif  // HLI_RH_VERIFIER_HPP
