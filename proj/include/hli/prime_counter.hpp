// SPDX-License-Identifier: Apache-2.0
//
// Exact prime counting by a segmented odd-only sieve, a persistent cache of
// threshold counts, the prime density, and the Montgomery-Vaughan gap check.
#ifndef HLI_PRIME_COUNTER_HPP
#define HLI_PRIME_COUNTER_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "hli/error.hpp"
#include "hli/interval.hpp"

namespace hli {

struct SieveConfig {
  std::uint64_t segment_size = std::uint64_t{1} << 20;
  unsigned parallel_segments = 0;  // 0 selects the hardware concurrency

  void validate() const {
    if (segment_size < (std::uint64_t{1} << 10)) throw DomainError("segment_size must be at least 2^10");
  }
};

namespace detail {

inline std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

inline std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

/// Primality flags for the odd numbers in [lo, hi), lo even: bit i stands for
/// lo + 2i + 1.  Base primes must cover sqrt(hi).
inline std::vector<std::uint64_t> sieve_odd_segment(std::uint64_t lo, std::uint64_t hi,
                                                    const std::vector<std::uint32_t>& base) {
  std::uint64_t count = (hi - lo) / 2;
  std::vector<std::uint64_t> bits((count + 63) / 64, ~std::uint64_t{0});
  if (count % 64 != 0) bits.back() = (std::uint64_t{1} << (count % 64)) - 1;
  auto clear = [&bits](std::uint64_t i) { bits[i / 64] &= ~(std::uint64_t{1} << (i % 64)); };
  for (std::uint32_t p : base) {
    if (p == 2) continue;
    std::uint64_t pp = std::uint64_t{p} * p;
    if (pp >= hi) break;
    std::uint64_t first = std::max(pp, (lo + p - 1) / p * p);
    if (first % 2 == 0) first += p;
    for (std::uint64_t m = first; m < hi; m += 2 * std::uint64_t{p}) clear((m - lo - 1) / 2);
  }
  if (lo == 0 && count > 0) clear(0);  // 1 is not prime
  return bits;
}

inline std::uint64_t popcount_prefix(const std::vector<std::uint64_t>& bits, std::uint64_t n_bits) {
  std::uint64_t total = 0;
  std::uint64_t full = n_bits / 64;
  for (std::uint64_t w = 0; w < full; ++w) total += static_cast<std::uint64_t>(std::popcount(bits[w]));
  if (n_bits % 64 != 0) {
    total += static_cast<std::uint64_t>(std::popcount(bits[full] & ((std::uint64_t{1} << (n_bits % 64)) - 1)));
  }
  return total;
}

inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace detail

/// Persistent map from integer thresholds to prime counts.
///
/// File format: "harmonic-li-picache v1 <limit> <checksum>" followed by
/// ascending "<threshold>,<count>" lines.  The checksum is FNV-1a (hex) over
/// the limit and all entries.
class PrimeCountCache {
 public:
  static constexpr const char* kMagic = "harmonic-li-picache";
  static constexpr const char* kVersion = "v1";

  std::uint64_t limit() const { return limit_; }
  const std::map<std::uint64_t, std::uint64_t>& entries() const { return entries_; }

  void insert(std::uint64_t threshold, std::uint64_t count) {
    entries_[threshold] = count;
    limit_ = std::max(limit_, threshold);
  }

  void set_limit(std::uint64_t limit) { limit_ = std::max(limit_, limit); }

  std::optional<std::uint64_t> lookup(std::uint64_t threshold) const {
    auto it = entries_.find(threshold);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  bool counts_monotone() const {
    std::uint64_t previous = 0;
    for (const auto& [x, c] : entries_) {
      if (c < previous) return false;
      previous = c;
    }
    return true;
  }

  std::string checksum() const {
    std::ostringstream os;
    os << limit_ << '\n';
    for (const auto& [x, c] : entries_) os << x << ',' << c << '\n';
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << detail::fnv1a(os.str());
    return hex.str();
  }

  std::string serialize() const {
    std::ostringstream os;
    os << kMagic << ' ' << kVersion << ' ' << limit_ << ' ' << checksum() << '\n';
    for (const auto& [x, c] : entries_) os << x << ',' << c << '\n';
    return os.str();
  }

  /// Writes via a temporary file and rename so readers never see a partial file.
  void save(const std::filesystem::path& path) const {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw Error("cannot write prime cache " + tmp.string());
      out << serialize();
      if (!out) throw Error("failed writing prime cache " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

 private:
  std::uint64_t limit_ = 0;
  std::map<std::uint64_t, std::uint64_t> entries_;
};

enum class CacheLoadStatus { ok, missing, corrupt };

struct CacheLoadResult {
  CacheLoadStatus status = CacheLoadStatus::missing;
  PrimeCountCache cache;
  std::vector<std::uint64_t> thresholds;  // readable thresholds, even when corrupt
};

/// Reads a cache file; any malformed line, ordering or checksum mismatch marks it corrupt.
inline CacheLoadResult load_prime_cache(const std::filesystem::path& path) {
  CacheLoadResult result;
  std::ifstream in(path);
  if (!in) return result;
  result.status = CacheLoadStatus::corrupt;
  std::string header;
  if (!std::getline(in, header)) return result;
  std::istringstream hs(header);
  std::string magic, version, checksum;
  std::uint64_t limit = 0;
  bool header_ok = static_cast<bool>(hs >> magic >> version >> limit >> checksum) &&
                   magic == PrimeCountCache::kMagic && version == PrimeCountCache::kVersion;
  PrimeCountCache cache;
  std::string line;
  bool lines_ok = true;
  std::optional<std::uint64_t> previous;
  while (std::getline(in, line)) {
    auto comma = line.find(',');
    std::uint64_t x = 0, c = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t used = 0;
      x = std::stoull(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("threshold");
      c = std::stoull(line.substr(comma + 1), &used);
      if (used != line.size() - comma - 1) throw std::invalid_argument("count");
    } catch (const std::exception&) {
      lines_ok = false;
      continue;
    }
    if (previous && x <= *previous) lines_ok = false;
    previous = x;
    result.thresholds.push_back(x);
    cache.insert(x, c);
  }
  cache.set_limit(limit);
  if (header_ok && lines_ok && cache.checksum() == checksum && cache.counts_monotone()) {
    result.status = CacheLoadStatus::ok;
    result.cache = std::move(cache);
  }
  return result;
}

/// Exact pi(x) for x <= 10^10.  Sieved segments are kept as bitsets with
/// per-word prefix counts, so repeated queries below the sieved limit are O(1).
class PrimeCounter {
 public:
  static constexpr std::uint64_t kCap = 10'000'000'000ULL;

  explicit PrimeCounter(SieveConfig config = {}) : config_(config) {
    config_.validate();
    // 128 integers per 64-bit word of odd flags keeps retained segments word-aligned
    config_.segment_size = (config_.segment_size + 127) / 128 * 128;
  }

  PrimeCounter(const PrimeCounter&) = delete;
  PrimeCounter& operator=(const PrimeCounter&) = delete;

  /// Number of primes <= x.
  std::uint64_t pi(std::uint64_t x) {
    check_cap(x);
    std::lock_guard<std::mutex> lock(mutex_);
    if (cache_) {
      if (auto hit = cache_->lookup(x)) return *hit;
    }
    std::uint64_t count = count_locked(x);
    if (cache_) {
      cache_->insert(x, count);
      cache_dirty_ = true;
    }
    return count;
  }

  /// pi(floor(x)) for rational x >= 0.
  std::uint64_t pi(const mpq_class& x) {
    if (x < 0) throw DomainError("pi requires x >= 0");
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    if (f > mpz_class(static_cast<unsigned long>(kCap))) throw LimitExceeded("pi is capped at 10^10");
    return pi(static_cast<std::uint64_t>(f.get_ui()));
  }

  std::uint64_t pi(double x) {
    if (!(x >= 0)) throw DomainError("pi requires x >= 0");
    return pi(mpq_class(x));
  }

  /// Element-wise pi over ascending thresholds with a single sieve extension.
  std::vector<std::uint64_t> pi_batch(const std::vector<std::uint64_t>& thresholds) {
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
      throw DomainError("pi_batch thresholds must be ascending");
    }
    if (thresholds.empty()) return {};
    check_cap(thresholds.back());
    {
      std::lock_guard<std::mutex> lock(mutex_);
      ensure_sieved_locked(std::min(thresholds.back(), kRetainLimit));
    }
    std::vector<std::uint64_t> counts;
    counts.reserve(thresholds.size());
    for (std::uint64_t x : thresholds) counts.push_back(pi(x));
    return counts;
  }

  std::vector<std::uint64_t> pi_batch(const std::vector<mpq_class>& thresholds) {
    std::vector<std::uint64_t> floors;
    floors.reserve(thresholds.size());
    for (const mpq_class& x : thresholds) {
      if (x < 0) throw DomainError("pi requires x >= 0");
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      if (f > mpz_class(static_cast<unsigned long>(kCap))) throw LimitExceeded("pi is capped at 10^10");
      floors.push_back(f.get_ui());
    }
    return pi_batch(floors);
  }

  std::uint64_t sieved_limit() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return retained_limit_;
  }

  /// Attaches a persistent cache file.  A corrupt file is discarded and the
  /// thresholds it listed are re-sieved; returns false in that case.
  bool attach_cache(const std::filesystem::path& path) {
    auto loaded = load_prime_cache(path);
    std::lock_guard<std::mutex> lock(mutex_);
    cache_path_ = path;
    cache_ = PrimeCountCache{};
    if (loaded.status == CacheLoadStatus::ok) {
      cache_ = std::move(loaded.cache);
      return true;
    }
    if (loaded.status == CacheLoadStatus::missing) return true;
    for (std::uint64_t x : loaded.thresholds) {
      if (x <= kCap) cache_->insert(x, count_locked(x));
    }
    cache_dirty_ = true;
    return false;
  }

  /// Writes the attached cache if it changed.
  void flush() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (cache_ && cache_path_ && cache_dirty_) {
      cache_->save(*cache_path_);
      cache_dirty_ = false;
    }
  }

  std::optional<std::string> cache_checksum() const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!cache_) return std::nullopt;
    return cache_->checksum();
  }

 private:
  // Integers up to this bound are kept as bitsets; beyond it, counts come from
  // segment checkpoints plus a re-sieve of the final partial segment.
  static constexpr std::uint64_t kRetainLimit = std::uint64_t{1} << 28;

  static void check_cap(std::uint64_t x) {
    if (x > kCap) throw LimitExceeded("pi is capped at 10^10");
  }

  void ensure_base_primes(std::uint64_t hi) {
    std::uint64_t need = detail::isqrt(hi) + 1;
    if (need > base_limit_) {
      base_limit_ = std::max<std::uint64_t>(need, 2 * base_limit_);
      base_ = detail::small_primes(base_limit_);
    }
  }

  unsigned worker_count() const {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return config_.parallel_segments == 0 ? hw : config_.parallel_segments;
  }

  // Sieves segments [lo_i, hi_i) in parallel batches, merging in order.
  template <class Consume>
  void sieve_segments(std::uint64_t from, std::uint64_t to, Consume&& consume) {
    ensure_base_primes(to);
    const std::uint64_t seg = config_.segment_size;
    const unsigned workers = worker_count();
    std::uint64_t lo = from;
    while (lo < to) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> bounds;
      for (unsigned w = 0; w < workers && lo < to; ++w) {
        std::uint64_t hi = std::min(lo + seg, to);
        bounds.emplace_back(lo, hi);
        lo = hi;
      }
      std::vector<std::vector<std::uint64_t>> results(bounds.size());
      if (bounds.size() == 1) {
        results[0] = detail::sieve_odd_segment(bounds[0].first, bounds[0].second, base_);
      } else {
        std::vector<std::future<std::vector<std::uint64_t>>> futures;
        for (const auto& [a, b] : bounds) {
          futures.push_back(std::async(std::launch::async, [this, a = a, b = b] {
            return detail::sieve_odd_segment(a, b, base_);
          }));
        }
        for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
      }
      for (std::size_t i = 0; i < bounds.size(); ++i) consume(bounds[i].first, bounds[i].second, results[i]);
    }
  }

  // Retained region covers [0, retained_limit_] with retained_limit_ + 1 a
  // segment boundary.
  void ensure_sieved_locked(std::uint64_t x) {
    if (x <= retained_limit_ && !words_.empty()) return;
    std::uint64_t from = words_.empty() ? 0 : retained_limit_ + 1;
    std::uint64_t seg = config_.segment_size;
    std::uint64_t to = std::min((x / seg + 1) * seg, kRetainLimit);
    sieve_segments(from, to, [this](std::uint64_t, std::uint64_t, const std::vector<std::uint64_t>& bits) {
      for (std::uint64_t w : bits) {
        word_prefix_.push_back(running_);
        running_ += static_cast<std::uint64_t>(std::popcount(w));
        words_.push_back(w);
      }
    });
    retained_limit_ = to - 1;
  }

  // pi(x) for x beyond the retained bitsets, via checkpoint counts at segment ends.
  std::uint64_t count_beyond_locked(std::uint64_t x) {
    ensure_sieved_locked(kRetainLimit - 1);
    const std::uint64_t seg = config_.segment_size;
    std::uint64_t segment_index = (x - kRetainLimit) / seg;
    while (checkpoints_.size() < segment_index) {
      std::uint64_t lo = kRetainLimit + checkpoints_.size() * seg;
      std::uint64_t target = kRetainLimit + segment_index * seg;
      std::uint64_t base_count = checkpoints_.empty() ? count_retained(kRetainLimit - 1) : checkpoints_.back();
      sieve_segments(lo, target, [&](std::uint64_t, std::uint64_t, const std::vector<std::uint64_t>& bits) {
        std::uint64_t c = 0;
        for (std::uint64_t w : bits) c += static_cast<std::uint64_t>(std::popcount(w));
        base_count += c;
        checkpoints_.push_back(base_count);
      });
    }
    std::uint64_t lo = kRetainLimit + segment_index * seg;
    std::uint64_t before = segment_index == 0 ? count_retained(kRetainLimit - 1) : checkpoints_[segment_index - 1];
    ensure_base_primes(lo + seg);
    auto bits = detail::sieve_odd_segment(lo, lo + seg, base_);
    return before + detail::popcount_prefix(bits, (x - lo + 1) / 2);
  }

  std::uint64_t count_retained(std::uint64_t x) const {
    if (x < 2) return 0;
    std::uint64_t n_bits = (x + 1) / 2;  // odd numbers 1, 3, ..., <= x
    std::uint64_t w = n_bits / 64;
    std::uint64_t count = 1;             // the prime 2
    if (w < words_.size()) {
      count += word_prefix_[w];
      if (n_bits % 64 != 0) {
        count += static_cast<std::uint64_t>(std::popcount(words_[w] & ((std::uint64_t{1} << (n_bits % 64)) - 1)));
      }
    } else {
      count += running_;
    }
    return count;
  }

  std::uint64_t count_locked(std::uint64_t x) {
    if (x < kRetainLimit) {
      ensure_sieved_locked(x);
      return count_retained(x);
    }
    return count_beyond_locked(x);
  }

  SieveConfig config_;
  mutable std::mutex mutex_;
  std::uint64_t base_limit_ = 0;
  std::vector<std::uint32_t> base_;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> word_prefix_;
  std::uint64_t running_ = 0;
  std::uint64_t retained_limit_ = 0;
  std::vector<std::uint64_t> checkpoints_;
  std::optional<PrimeCountCache> cache_;
  std::optional<std::filesystem::path> cache_path_;
  bool cache_dirty_ = false;
};

/// pi(x)/x for x > 0 given as an interval; the floor of x must be certain.
inline Interval prime_density(PrimeCounter& counter, const Interval& x) {
  if (!x.is_positive()) throw DomainError("prime_density requires x > 0");
  auto f = certain_floor(x);
  if (!f) throw IntegerBoundary("floor of the density argument is not certain");
  if (*f > mpz_class(static_cast<unsigned long>(PrimeCounter::kCap))) throw LimitExceeded("pi is capped at 10^10");
  return Interval(static_cast<long long>(counter.pi(static_cast<std::uint64_t>(f->get_ui())))) / x;
}

inline Interval prime_density(PrimeCounter& counter, const mpq_class& x) {
  if (x <= 0) throw DomainError("prime_density requires x > 0");
  return Interval::from_rational(mpq_class(counter.pi(x)) / x);
}

struct GapCheck {
  std::uint64_t count_difference = 0;
  Interval bound;   // 2(y - x)/log(y - x)
  Interval margin;  // bound - count_difference
  bool holds = false;
};

/// Montgomery-Vaughan: 0 <= pi(y) - pi(x) < 2(y - x)/log(y - x) for y - x > 1.
inline GapCheck mv_gap_check(PrimeCounter& counter, const mpq_class& x, const mpq_class& y) {
  if (!(x > 0) || !(y > x) || !(y - x > 1)) throw DomainError("mv_gap_check requires y > x > 0 and y - x > 1");
  std::uint64_t px = counter.pi(x);
  std::uint64_t py = counter.pi(y);
  Interval d = Interval::from_rational(y - x);
  Interval bound = Interval(2) * d / log(d);
  std::uint64_t diff = py - px;
  Interval margin = bound - Interval(static_cast<long long>(diff));
  return {diff, bound, margin, py >= px && margin.is_positive()};
}

}  // namespace hli

#endif  // HLI_PRIME_COUNTER_HPP
