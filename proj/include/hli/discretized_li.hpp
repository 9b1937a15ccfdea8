// SPDX-License-Identifier: Apache-2.0
//
// The discretised logarithmic integral: partial sums of 1/(H_k - gamma + t),
// the discrepancy sequences theta/eta/delta, the error functions beta_n(t, r)
// and beta(t) with two-sided certified bounds, and the local maxima rho_n.
#ifndef HLI_DISCRETIZED_LI_HPP
#define HLI_DISCRETIZED_LI_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hli/constants.hpp"
#include "hli/error.hpp"
#include "hli/interval.hpp"
#include "hli/precision.hpp"
#include "hli/rational.hpp"
#include "hli/shift.hpp"
#include "hli/special_functions.hpp"

namespace hli {

/// Shift t together with a starting index N and append-only prefix caches of
/// sum_{k=N}^{m-1} 1/(H_k - gamma + t)^j and sum_{k=N}^{m-1} 1/(t + log(k+1/2)).
/// Copies share the caches; concurrent readers are allowed.
class ShiftContext {
 public:
  /// Requires t > -log N, the domain of the discrepancy sequences.
  ShiftContext(Shift t, std::uint64_t start) : ShiftContext(std::move(t), start, true) {}

  /// Requires only H_N - gamma + t > 0, which is all the partial sums need.
  static ShiftContext for_sums(Shift t, std::uint64_t start) { return ShiftContext(std::move(t), start, false); }

  const Shift& shift() const { return state_->shift; }
  std::uint64_t start() const { return state_->start; }
  int digits() const { return state_->digits; }
  const Interval& t_value() const { return state_->t; }

  /// H_k - gamma + t for k >= N.
  Interval denominator(std::uint64_t k) const {
    require_index(k, state_->start);
    extend(k + 1, 0);
    std::shared_lock lock(state_->mutex);
    return state_->denominators[k - state_->start];
  }

  /// sum_{k=N}^{n-1} 1/(H_k - gamma + t)^order; exactly 0 when n = N.
  Interval partial_inverse_sum(std::uint64_t n, unsigned order = 1) const {
    if (order == 0) throw DomainError("order must be at least 1");
    require_index(n, state_->start);
    extend(n, order);
    std::shared_lock lock(state_->mutex);
    return state_->power_prefix.at(order)[n - state_->start];
  }

  /// sum_{k=N}^{n-1} 1/(t + log(k + 1/2)).
  Interval midpoint_log_sum(std::uint64_t n) const {
    require_index(n, state_->start);
    extend_midpoint(n);
    std::shared_lock lock(state_->mutex);
    return state_->midpoint_prefix[n - state_->start];
  }

  /// li(e^t x)/e^t at integer x >= N, exactly 0 when e^t x = mu symbolically.
  Interval scaled_li(std::uint64_t x) const {
    PrecisionScope scope(state_->digits);
    if (auto q = state_->shift.exact_mu_exp_neg(); q && *q == mpq_class(x)) {
      return Interval(0);
    }
    return li_scaled(state_->t, Interval(static_cast<long long>(x)));
  }

 private:
  struct State {
    Shift shift;
    std::uint64_t start = 1;
    int digits = 40;
    Interval t;
    Interval t_minus_gamma;
    std::shared_mutex mutex;
    std::vector<Interval> denominators;
    std::optional<Interval> running_harmonic;
    std::uint64_t running_index = 0;
    std::map<unsigned, std::vector<Interval>> power_prefix;
    std::vector<Interval> midpoint_prefix;
  };

  ShiftContext(Shift t, std::uint64_t start, bool require_log_domain) : state_(std::make_shared<State>()) {
    if (start == 0) throw DomainError("starting index N must be positive");
    state_->digits = current_digits();
    state_->shift = std::move(t);
    state_->start = start;
    state_->t = state_->shift.value();
    state_->t_minus_gamma = state_->shift.minus_gamma();
    if (require_log_domain) {
      if (!(state_->t + log(Interval(static_cast<long long>(start)))).is_positive()) {
        throw DomainError("shift requires t > -log N");
      }
    } else if (!(harmonic_int(start).value + state_->t_minus_gamma).is_positive()) {
      throw DomainError("shift requires H_N - gamma + t > 0");
    }
  }

  static void require_index(std::uint64_t n, std::uint64_t start) {
    if (n < start) throw DomainError("index below the starting index N");
  }

  Interval next_denominator(std::uint64_t k) const {
    if (k <= ExactHarmonicTable::kExactLimit) {
      return Interval::from_rational(harmonic_exact(k)) + state_->t_minus_gamma;
    }
    if (!state_->running_harmonic || state_->running_index + 1 != k) {
      state_->running_harmonic = harmonic_int(k - 1).value;
    }
    *state_->running_harmonic += recip(Interval(static_cast<long long>(k)));
    state_->running_index = k;
    return *state_->running_harmonic + state_->t_minus_gamma;
  }

  // Makes denominators available for k < n and the order-`order` prefix up to n.
  void extend(std::uint64_t n, unsigned order) const {
    State& s = *state_;
    {
      std::shared_lock lock(s.mutex);
      bool have_dens = s.denominators.size() >= n - s.start;
      bool have_prefix = order == 0 || (s.power_prefix.count(order) && s.power_prefix.at(order).size() > n - s.start);
      if (have_dens && have_prefix) return;
    }
    std::unique_lock lock(s.mutex);
    PrecisionScope scope(s.digits);
    while (s.denominators.size() < n - s.start) {
      std::uint64_t k = s.start + s.denominators.size();
      Interval d = next_denominator(k);
      if (!d.is_positive()) throw DomainError("denominator H_k - gamma + t not certifiably positive");
      s.denominators.push_back(std::move(d));
    }
    if (order == 0) return;
    auto& prefix = s.power_prefix[order];
    if (prefix.empty()) prefix.emplace_back(0);
    while (prefix.size() <= n - s.start) {
      std::size_t i = prefix.size() - 1;
      prefix.push_back(prefix.back() + recip(pow_int(s.denominators[i], static_cast<long>(order))));
    }
  }

  void extend_midpoint(std::uint64_t n) const {
    State& s = *state_;
    {
      std::shared_lock lock(s.mutex);
      if (s.midpoint_prefix.size() > n - s.start) return;
    }
    std::unique_lock lock(s.mutex);
    PrecisionScope scope(s.digits);
    if (s.midpoint_prefix.empty()) s.midpoint_prefix.emplace_back(0);
    while (s.midpoint_prefix.size() <= n - s.start) {
      std::uint64_t k = s.start + s.midpoint_prefix.size() - 1;
      Interval half_point = Interval::from_rational(mpq_class(2 * k + 1, 2));
      s.midpoint_prefix.push_back(s.midpoint_prefix.back() + recip(s.t + log(half_point)));
    }
  }

  std::shared_ptr<State> state_;
};

struct BoundPair {
  Interval lower;
  Interval upper;
  std::uint64_t n_used = 0;
  std::string target;

  /// The certified claim [lower.lo, upper.hi].
  Interval claim() const { return Interval::hull(lower, upper); }
};

struct RCeiling {
  Interval r_t;
  std::uint64_t R_t = 1;
};

/// R_t = ceil(mu e^{-t}), refining precision until the enclosure of mu e^{-t}
/// is free of integers.
inline RCeiling r_ceiling(const Shift& t) {
  auto to_index = [](const mpz_class& c) {
    if (c < 1 || c > mpz_class(std::numeric_limits<long>::max())) {
      throw LimitExceeded("R_t outside the supported integer range");
    }
    return static_cast<std::uint64_t>(c.get_si());
  };
  if (auto q = t.exact_mu_exp_neg()) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q->get_num_mpz_t(), q->get_den_mpz_t());
    return {Interval::from_rational(*q), to_index(c)};
  }
  for (int d = current_digits();; d = std::min(2 * d, max_refine_digits())) {
    PrecisionScope scope(d);
    Interval r = t.mu_exp_neg();
    if (auto c = certain_ceil(r)) {
      return {r, to_index(*c)};
    }
    if (d >= max_refine_digits()) break;
  }
  throw IntegerBoundary("mu e^{-t} indistinguishable from an integer at max_refine_digits (t = " + t.label() + ")");
}

struct Discrepancies {
  Interval theta;
  Interval eta;
  Interval delta;
};

/// theta_n = int_N^n dx/(t + log x) - sum_{k=N}^{n-1} 1/(H_k - gamma + t),
/// eta_n   = sum_{k=N}^{n} [1/(t + log(k+1/2)) - 1/(H_k - gamma + t)],
/// delta_n = int_N^{n+1} dx/(t + log x) - sum_{k=N}^{n} 1/(t + log(k+1/2)),
/// so that theta_n = eta_{n-1} + delta_{n-1}.
inline Discrepancies discrepancies(const ShiftContext& ctx, std::uint64_t n) {
  if (n < ctx.start()) throw DomainError("discrepancies require n >= N");
  PrecisionScope scope(ctx.digits());
  Interval base = ctx.scaled_li(ctx.start());
  Interval theta = ctx.scaled_li(n) - base - ctx.partial_inverse_sum(n);
  Interval mids = ctx.midpoint_log_sum(n + 1);
  Interval eta = mids - ctx.partial_inverse_sum(n + 1);
  Interval delta = ctx.scaled_li(n + 1) - base - mids;
  return {theta, eta, delta};
}

namespace detail {

inline Interval theta_tail_lower(const Interval& t, std::uint64_t n) {
  Interval n1(static_cast<long long>(n + 1));
  Interval u = t + log(n1);
  return tail_integral(n1, t) / Interval(24) + recip(Interval(24) * n1 * sqr(u));
}

inline Interval theta_tail_upper(const Interval& t, std::uint64_t n) {
  Interval nn(static_cast<long long>(n));
  Interval half = Interval::from_rational(mpq_class(2 * n + 1, 2));
  Interval u_half = t + log(half);
  Interval u = t + log(nn);
  Interval n2 = sqr(nn);
  return tail_integral(nn, t) / Interval(24) + recip(Interval(24) * half * sqr(u_half)) +
         recip(Interval(24) * n2 * sqr(u)) + recip(Interval(12) * n2 * pow_int(u, 3));
}

}  // namespace detail

/// Two-sided bounds for theta(t, N) - theta_n(t, N).
inline BoundPair theta_tail_bounds(const ShiftContext& ctx, std::uint64_t n) {
  if (n < ctx.start()) throw DomainError("theta_tail_bounds requires n >= N");
  PrecisionScope scope(ctx.digits());
  return {detail::theta_tail_lower(ctx.t_value(), n), detail::theta_tail_upper(ctx.t_value(), n), n,
          "theta(t,N)"};
}

/// Certified check that N >= mu e^{-t}; throws DomainError when N is too small.
inline void require_admissible_start(const Shift& t, std::uint64_t start) {
  if (auto q = t.exact_mu_exp_neg()) {
    if (mpq_class(start) < *q) throw DomainError("starting index below mu e^{-t}");
    return;
  }
  for (int d = current_digits();; d = std::min(2 * d, max_refine_digits())) {
    PrecisionScope scope(d);
    Interval r = t.mu_exp_neg();
    Interval s(static_cast<long long>(start));
    if (certainly_less_equal(r, s)) return;
    if (certainly_less(s, r)) throw DomainError("starting index below mu e^{-t}");
    if (d >= max_refine_digits()) break;
  }
  throw IntegerBoundary("cannot decide whether N >= mu e^{-t} at max_refine_digits");
}

/// beta_n(t, r) for a context whose start is ceil(r).
inline Interval beta_n(const ShiftContext& ctx, std::uint64_t n) {
  if (n < ctx.start()) throw DomainError("beta_n requires n >= ceil(r)");
  PrecisionScope scope(ctx.digits());
  return ctx.scaled_li(n) - ctx.partial_inverse_sum(n);
}

inline std::uint64_t ceiling_index(const mpq_class& r) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  if (c < 1 || c > mpz_class(std::numeric_limits<long>::max())) {
    throw DomainError("ceil(r) must be a positive integer in range");
  }
  return static_cast<std::uint64_t>(c.get_si());
}

/// beta_n(t, r) = li(e^t n)/e^t - sum_{ceil(r) <= k < n} 1/(H_k - gamma + t).
inline Interval beta_n(const Shift& t, const mpq_class& r, std::uint64_t n) {
  std::uint64_t start = ceiling_index(r);
  require_admissible_start(t, start);
  return beta_n(ShiftContext(t, start), n);
}

/// beta(t, N) enclosed as beta_n plus the two-sided tail bounds.
inline BoundPair beta_bounds(const ShiftContext& ctx, std::uint64_t n) {
  BoundPair tail = theta_tail_bounds(ctx, n);
  PrecisionScope scope(ctx.digits());
  Interval b = beta_n(ctx, n);
  return {b + tail.lower, b + tail.upper, n, "beta(t,r)"};
}

/// Bounds on beta(t) = beta(t, R_t) from truncation at n >= R_t.
inline BoundPair beta_bounds(const Shift& t, std::uint64_t n) {
  RCeiling rc = r_ceiling(t);
  if (n < rc.R_t) {
    throw DomainError("beta_bounds requires n >= R_t = " + std::to_string(rc.R_t));
  }
  BoundPair result = beta_bounds(ShiftContext(t, rc.R_t), n);
  result.target = "beta(t)";
  return result;
}

struct RangeCeiling {
  Interval scaled_li_at_start;  // li(e^t R_t)/e^t
  Interval scaled_li_bound;     // li(mu + e^t)/e^t
  Interval reciprocal_log_mu;   // 1/log mu
};

inline RangeCeiling beta_range_ceiling_check(const Shift& t) {
  RCeiling rc = r_ceiling(t);
  ShiftContext ctx(t, rc.R_t);
  Interval et = t.exp_value();
  return {ctx.scaled_li(rc.R_t), li(mu_constant() + et) / et, recip(log(mu_constant()))};
}

/// n / sum_{k=1}^{n} 1/(H_k + t), exact when t is rational and n <= 10^4.
inline Interval harmonic_mean_shifted(const Shift& t, std::uint64_t n) {
  if (n == 0) throw DomainError("harmonic_mean_shifted requires n >= 1");
  Interval tv = t.value();
  if (!(Interval(1) + tv).is_positive()) throw DomainError("harmonic_mean_shifted requires H_1 + t > 0");
  if (t.gamma_coeff() == 0 && t.log_argument() == 1 && t.log_mu_coeff() == 0 && t.log_alpha_coeff() == 0 &&
      n <= ExactHarmonicTable::kExactLimit) {
    mpq_class sum = 0;
    for (std::uint64_t k = 1; k <= n; ++k) sum += 1 / (harmonic_exact(k) + t.rational_part());
    return Interval::from_rational(mpq_class(n) / sum);
  }
  Interval sum;
  for (std::uint64_t k = 1; k <= n; ++k) sum += recip(harmonic_int(k).value + tv);
  return Interval(static_cast<long long>(n)) / sum;
}

/// int_a^b dx/(t + log x)^m via I_{m+1} = (I_m - [x/(t + log x)^m]_a^b)/m.
inline Interval inverse_log_power_integral(const Interval& t, std::uint64_t a, std::uint64_t b, unsigned m) {
  if (m == 0) throw DomainError("power must be at least 1");
  Interval ia(static_cast<long long>(a));
  Interval ib(static_cast<long long>(b));
  Interval ua = t + log(ia);
  Interval ub = t + log(ib);
  if (!ua.is_positive()) throw DomainError("integral requires t + log a > 0");
  Interval value = li_scaled(t, ib) - li_scaled(t, ia);
  for (unsigned j = 1; j < m; ++j) {
    Interval boundary = ib / pow_int(ub, j) - ia / pow_int(ua, j);
    value = (value - boundary) / Interval(static_cast<long long>(j));
  }
  return value;
}

/// (-1)^j d^j/dt^j theta_n(t, N) = j! (int_N^n dx/(t+log x)^{j+1} - sum 1/(H_k - gamma + t)^{j+1}).
inline Interval theta_derivative(const ShiftContext& ctx, std::uint64_t n, unsigned j) {
  if (n < ctx.start()) throw DomainError("theta_derivative requires n >= N");
  PrecisionScope scope(ctx.digits());
  Interval integral = j == 0 ? ctx.scaled_li(n) - ctx.scaled_li(ctx.start())
                             : inverse_log_power_integral(ctx.t_value(), ctx.start(), n, j + 1);
  Interval factorial(1);
  for (unsigned i = 2; i <= j; ++i) factorial *= Interval(static_cast<long long>(i));
  return factorial * (integral - ctx.partial_inverse_sum(n, j + 1));
}

struct RhoSearchOptions {
  std::optional<mpq_class> lower;  // defaults to a rational just above log mu
  mpq_class upper = 2;
  mpq_class width{1, 1000000};
};

namespace detail {

/// d/dt beta_n(t) at rational t >= log mu (where R_t = 1):
/// n/(t + log n) - li(e^t n)/e^t + sum_{k=1}^{n-1} 1/(H_k - gamma + t)^2.
class BetaDerivative {
 public:
  explicit BetaDerivative(std::uint64_t n) : n_(n) {}

  Interval operator()(const mpq_class& t) {
    const std::vector<Interval>& hg = harmonic_minus_gamma();
    Interval tv = Interval::from_rational(t);
    Interval nn(static_cast<long long>(n_));
    Interval value = nn / (tv + log(nn)) - li_scaled(tv, nn);
    for (const Interval& h : hg) value += recip(sqr(h + tv));
    return value;
  }

 private:
  const std::vector<Interval>& harmonic_minus_gamma() {
    int d = current_digits();
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    std::vector<Interval> values;
    values.reserve(n_ > 0 ? n_ - 1 : 0);
    Interval g = gamma_constant();
    for (std::uint64_t k = 1; k < n_; ++k) values.push_back(harmonic_int(k).value - g);
    return cache_.emplace(d, std::move(values)).first->second;
  }

  std::uint64_t n_;
  std::map<int, std::vector<Interval>> cache_;
};

}  // namespace detail

/// Encloses the local maximiser rho_n of beta_n(t) by bisection on the
/// certified sign of its t-derivative.
inline Interval rho_n_search(std::uint64_t n, const RhoSearchOptions& options = {}) {
  if (n == 0) throw DomainError("rho_n_search requires n >= 1");
  if (options.width <= 0) throw DomainError("search width must be positive");
  mpq_class a = options.lower ? *options.lower : log(mu_constant()).hi_rational();
  mpq_class b = options.upper;
  {
    Interval log_mu = log(mu_constant());
    if (!certainly_less_equal(log_mu, Interval::from_rational(a)) || b <= a) {
      throw DomainError("rho search bracket must satisfy log mu <= lower < upper");
    }
  }
  detail::BetaDerivative derivative(n);
  auto sign_at = [&](const mpq_class& t) {
    for (int d = current_digits();; d = std::min(2 * d, max_refine_digits())) {
      PrecisionScope scope(d);
      int s = derivative(t).certain_sign();
      if (s != 0) return s;
      if (d >= max_refine_digits()) break;
    }
    throw PrecisionExceeded("sign of beta_n' undecidable at max_refine_digits");
  };
  if (sign_at(a) <= 0 || sign_at(b) >= 0) {
    throw NoInteriorMax("beta_n has no interior local maximum on the bracket for n = " + std::to_string(n));
  }
  while (b - a > options.width) {
    mpq_class m = (a + b) / 2;
    if (sign_at(m) > 0) {
      a = m;
    } else {
      b = m;
    }
  }
  return Interval::from_bounds(a, b);
}

}  // namespace hli

#endif  // HLI_DISCRETIZED_LI_HPP
