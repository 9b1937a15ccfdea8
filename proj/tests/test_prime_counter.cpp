// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "hli/prime_counter.hpp"
#include "hli/shift.hpp"
#include "test_support.hpp"

using hli::Interval;
using hli::PrimeCounter;

namespace {

bool is_prime_by_trial_division(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::filesystem::path scratch_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "hli_prime_counter_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::filesystem::remove(path);
  return path;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("pi at small and reference arguments", "[pi]") {
  PrimeCounter counter;
  CHECK(counter.pi(1.9) == 0);
  CHECK(counter.pi(std::uint64_t{0}) == 0);
  CHECK(counter.pi(std::uint64_t{2}) == 1);
  CHECK(counter.pi(std::uint64_t{100}) == 25);
  CHECK(counter.pi(mpq_class(201, 2)) == 25);
  CHECK(counter.pi(std::uint64_t{1000000}) == 78498);
  CHECK_THROWS_AS(counter.pi(PrimeCounter::kCap + 1), hli::LimitExceeded);
  CHECK_THROWS_AS(counter.pi(mpq_class(-1)), hli::DomainError);
}

TEST_CASE("pi agrees with trial division up to 10^4", "[pi][oracle]") {
  PrimeCounter counter(hli::SieveConfig{1024, 1});
  std::uint64_t expected = 0;
  for (std::uint64_t x = 0; x <= 10000; ++x) {
    if (is_prime_by_trial_division(x)) ++expected;
    REQUIRE(counter.pi(x) == expected);
  }
}

TEST_CASE("segment layouts agree", "[pi]") {
  PrimeCounter small(hli::SieveConfig{1024, 1});
  PrimeCounter large(hli::SieveConfig{std::uint64_t{1} << 16, 4});
  hli::test::RationalSampler sample(9);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t x = sample.integer(0, 3000000);
    REQUIRE(small.pi(x) == large.pi(x));
  }
  CHECK_THROWS_AS(PrimeCounter(hli::SieveConfig{512, 0}), hli::DomainError);
}

TEST_CASE("pi is monotone and steps by one at primes", "[pi][property]") {
  PrimeCounter counter;
  hli::test::RationalSampler sample(11);
  std::uint64_t previous = 0;
  for (std::uint64_t x = 0; x <= 200000; x += 97) {
    std::uint64_t c = counter.pi(x);
    REQUIRE(c >= previous);
    previous = c;
  }
  for (int i = 0; i < 300; ++i) {
    std::uint64_t x = sample.integer(3, 2000000);
    std::uint64_t step = counter.pi(x) - counter.pi(x - 1);
    REQUIRE(step == (is_prime_by_trial_division(x) ? 1u : 0u));
  }
}

TEST_CASE("pi_batch", "[pi]") {
  PrimeCounter counter;
  CHECK(counter.pi_batch(std::vector<std::uint64_t>{2, 3, 4}) == std::vector<std::uint64_t>{1, 2, 2});
  CHECK(counter.pi_batch(std::vector<std::uint64_t>{}).empty());
  std::vector<mpq_class> thresholds;
  hli::Interval eg = hli::exp_gamma();
  for (int n = 1; n <= 10; ++n) thresholds.push_back((eg * Interval(n)).midpoint().lo_rational());
  auto batch = counter.pi_batch(thresholds);
  for (std::size_t i = 0; i < thresholds.size(); ++i) CHECK(batch[i] == counter.pi(thresholds[i]));
}

TEST_CASE("prime density", "[density]") {
  PrimeCounter counter;
  CHECK(hli::prime_density(counter, mpq_class(2)).contains(mpq_class(1, 2)));
  CHECK(hli::prime_density(counter, mpq_class(100)).contains(mpq_class(1, 4)));
  Interval x = hli::exp_gamma() * Interval(1000);
  Interval d = hli::prime_density(counter, x);
  CHECK(d.overlaps(Interval(static_cast<long long>(counter.pi(std::uint64_t{1781}))) / x));
  CHECK(d.width() < 1e-30);
  CHECK_THROWS_AS(hli::prime_density(counter, mpq_class(0)), hli::DomainError);
  CHECK_THROWS_AS(hli::prime_density(counter, Interval::from_bounds(mpq_class(99, 10), mpq_class(101, 10))),
                  hli::IntegerBoundary);
}

TEST_CASE("prime gap bound", "[gap]") {
  PrimeCounter counter;
  auto a = hli::mv_gap_check(counter, 10, 20);
  CHECK(a.count_difference == 4);
  CHECK(a.holds);
  CHECK(hli::test::consistent_with_printed(a.bound, "8.69"));
  auto b = hli::mv_gap_check(counter, 2, 4);
  CHECK(b.count_difference == 1);
  CHECK(b.holds);
  CHECK(hli::test::consistent_with_printed(b.bound, "5.77"));
  CHECK_THROWS_AS(hli::mv_gap_check(counter, 3, 4), hli::DomainError);
  CHECK_THROWS_AS(hli::mv_gap_check(counter, 0, 4), hli::DomainError);
}

TEST_CASE("prime count cache round trip", "[cache]") {
  auto path = scratch_file("roundtrip.cache");
  std::string checksum;
  {
    PrimeCounter counter;
    REQUIRE(counter.attach_cache(path));
    counter.pi(std::uint64_t{1000});
    counter.pi(std::uint64_t{100});
    counter.pi(std::uint64_t{54321});
    counter.flush();
    checksum = *counter.cache_checksum();
  }
  std::string text = read_file(path);
  CHECK(text.rfind("harmonic-li-picache v1 ", 0) == 0);
  CHECK(text.find("100,25\n") != std::string::npos);
  CHECK(text.find("1000,168\n") != std::string::npos);
  CHECK(text.back() == '\n');

  auto loaded = hli::load_prime_cache(path);
  REQUIRE(loaded.status == hli::CacheLoadStatus::ok);
  CHECK(loaded.cache.lookup(1000) == 168u);
  CHECK(loaded.cache.lookup(54321) == 5525u);
  CHECK(loaded.cache.checksum() == checksum);
  CHECK(loaded.cache.counts_monotone());

  PrimeCounter reopened;
  REQUIRE(reopened.attach_cache(path));
  CHECK(reopened.cache_checksum() == checksum);
  CHECK(reopened.pi(std::uint64_t{54321}) == 5525);
}

TEST_CASE("corrupt caches are detected and recomputed", "[cache]") {
  auto path = scratch_file("corrupt.cache");
  {
    PrimeCounter counter;
    counter.attach_cache(path);
    counter.pi(std::uint64_t{1000});
    counter.pi(std::uint64_t{10000});
    counter.flush();
  }
  std::string text = read_file(path);
  auto pos = text.find("1000,168");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 8, "1000,169");
  {
    std::ofstream out(path, std::ios::trunc);
    out << text;
  }
  CHECK(hli::load_prime_cache(path).status == hli::CacheLoadStatus::corrupt);

  PrimeCounter counter;
  CHECK_FALSE(counter.attach_cache(path));
  CHECK(counter.pi(std::uint64_t{1000}) == 168);
  counter.flush();
  auto repaired = hli::load_prime_cache(path);
  REQUIRE(repaired.status == hli::CacheLoadStatus::ok);
  CHECK(repaired.cache.lookup(1000) == 168u);
  CHECK(repaired.cache.lookup(10000) == 1229u);

  auto garbage = scratch_file("garbage.cache");
  {
    std::ofstream out(garbage);
    out << "not a cache\n1,2,3\n";
  }
  CHECK(hli::load_prime_cache(garbage).status == hli::CacheLoadStatus::corrupt);
  CHECK(hli::load_prime_cache(scratch_file("missing.cache")).status == hli::CacheLoadStatus::missing);
}
