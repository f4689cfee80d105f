#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "qdl/log_value.hpp"
#include "qdl/parallel.hpp"
#include "qdl/primes.hpp"
#include "qdl/subset.hpp"
#include "qdl/weights.hpp"

using doctest::Approx;
using namespace qdl;

TEST_CASE("LogValue arithmetic and rendering") {
  const auto a = LogValue::from_double(24.5);
  CHECK(a.log10() == Approx(std::log10(24.5)).epsilon(1e-15));
  CHECK(a.to_double() == Approx(24.5).epsilon(1e-14));
  CHECK(a.mantissa() == Approx(2.45).epsilon(1e-14));
  CHECK(a.exponent() == 1);
  CHECK(a.to_string(3) == "2.45E1");

  CHECK(LogValue::zero().is_zero());
  CHECK(LogValue::zero().to_string() == "0");
  CHECK(LogValue::zero() < a);
  CHECK_THROWS_AS(LogValue::from_double(-1.0), std::invalid_argument);

  const auto big = LogValue::from_log10(775.2304);
  CHECK(big.exponent() == 775);
  CHECK(big.to_string(2) == "1.7E775");
  CHECK(std::isinf(big.to_double()));
  CHECK((big / big).log10() == Approx(0.0));
  CHECK(big.pow(2.0).log10() == Approx(1550.4608));

  // 9.999... must carry into the exponent rather than print "10.0E2".
  CHECK(LogValue::from_double(999.99).to_string(2) == "1E3");
}

TEST_CASE("LogValue parsing") {
  CHECK(LogValue::parse("1.7E775").log10() == Approx(775 + std::log10(1.7)));
  CHECK(LogValue::parse("1.7e775").log10() == Approx(775 + std::log10(1.7)));
  CHECK(LogValue::parse("4x10^35714").log10() == Approx(35714 + std::log10(4.0)));
  CHECK(LogValue::parse("1.6×10^97").log10() == Approx(97 + std::log10(1.6)));
  CHECK(LogValue::parse("10^139333").log10() == Approx(139333.0));
  CHECK(LogValue::parse("1922").to_double() == Approx(1922.0));
  CHECK(LogValue::parse("0").is_zero());
  CHECK_THROWS(LogValue::parse("abc"));
}

TEST_CASE("LogValue multiplication is associative and commutative") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mag(-400.0, 400.0);
  for (int i = 0; i < 1000; ++i) {
    const auto a = LogValue::from_log10(mag(rng));
    const auto b = LogValue::from_log10(mag(rng));
    const auto c = LogValue::from_log10(mag(rng));
    CHECK(std::abs(((a * b) * c).log10() - (a * (b * c)).log10()) <= 1e-12);
    CHECK(std::abs((a * b).log10() - (b * a).log10()) <= 1e-12);
  }
}

TEST_CASE("first_primes") {
  CHECK(first_primes(1).bases() == std::vector<std::uint64_t>{2});
  CHECK(first_primes(5).bases() == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
  const auto p = first_primes(10000);
  CHECK(p.dimension() == 10000);
  CHECK(p.base(10000) == 104729);
  const auto ref = oracle::sieve(104729);
  CHECK(p.bases() == ref);
  CHECK_THROWS_AS(first_primes(0), std::invalid_argument);
  CHECK_THROWS_AS(p.base(0), std::out_of_range);
}

TEST_CASE("segmented sieve matches the plain sieve") {
  for (std::uint64_t limit : {0ULL, 1ULL, 2ULL, 3ULL, 100ULL, 65536ULL, 65537ULL, 300001ULL}) {
    CHECK(primes_up_to(limit) == oracle::sieve(limit));
  }
  for (std::size_t d = 6; d <= 5000; d += 97) {
    CHECK(nth_prime_upper_bound(d) >= first_primes(d).base(d));
  }
}

TEST_CASE("is_prime_power") {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 27, 49, 125, 1024}) CHECK(is_prime_power(q));
  for (std::uint64_t q : {0, 1, 6, 10, 12, 18, 36, 100}) CHECK_FALSE(is_prime_power(q));
}

TEST_CASE("Subset") {
  const auto u = Subset::parse("{3,1}");
  CHECK(u.indices() == std::vector<std::size_t>{1, 3});
  CHECK(u.mask() == 0b101);
  CHECK(Subset::from_mask(0b101) == u);
  CHECK(u.to_string() == "{1,3}");
  CHECK(Subset::parse("2") == Subset({2}));
  CHECK(Subset::full(3).indices() == std::vector<std::size_t>{1, 2, 3});
  CHECK_THROWS_AS(Subset({}), std::invalid_argument);
  CHECK_THROWS_AS(Subset({0}), std::invalid_argument);
  CHECK(Subset({1, 1}).size() == 1);
  CHECK_THROWS_AS(u.check_within(2), std::out_of_range);
  CHECK_NOTHROW(u.check_within(3));

  CHECK(subset_precedes(Subset({3}), Subset({1, 2})));
  CHECK(subset_precedes(Subset({1, 3}), Subset({2, 3})));
  CHECK_FALSE(subset_precedes(Subset({1}), Subset({1})));

  std::size_t count = 0;
  for_each_subset_mask(4, [&](std::uint64_t) { ++count; });
  CHECK(count == 15);
  CHECK_THROWS_AS(check_enumerable(26), std::invalid_argument);
}

TEST_CASE("weight_at and subset_weight") {
  CHECK(weight_at(WeightFamily::power_law(1.0), 2) == Approx(0.25));
  CHECK(weight_at(WeightFamily::reciprocal(), 5) == Approx(0.2));
  CHECK(weight_at(WeightFamily::log_sqrt(1.0), 1) == 1.0);

  CHECK(subset_weight(WeightFamily::reciprocal(), Subset({1})) == Approx(1.0));
  CHECK(subset_weight(WeightFamily::reciprocal(), Subset({2, 3})) == Approx(1.0 / 6.0));
  CHECK(subset_weight(WeightFamily::power_law(2.0), Subset({1, 2, 3})) == Approx(1.0 / 216.0));

  const auto e = WeightFamily::explicit_list({1.0, 0.5});
  CHECK(e.length() == 2);
  CHECK_THROWS_AS(weight_at(e, 3), std::out_of_range);
  CHECK_THROWS_AS(WeightFamily::explicit_list({0.5, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(WeightFamily::explicit_list({1.5}), std::invalid_argument);
  CHECK_THROWS_AS(WeightFamily::explicit_list({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightFamily::power_law(-1.0), std::invalid_argument);
}

TEST_CASE("WeightFamily::parse") {
  CHECK(weight_at(WeightFamily::parse("power:2"), 2) == Approx(0.125));
  CHECK(weight_at(WeightFamily::parse("reciprocal"), 4) == Approx(0.25));
  CHECK(weight_at(WeightFamily::parse("explicit:1,0.5"), 2) == Approx(0.5));
  CHECK(weight_at(WeightFamily::parse("unit:3"), 3) == 1.0);
  CHECK(weight_at(WeightFamily::parse("logsqrt:1"), 10) == Approx(1.0 / std::sqrt(std::log(11.0))));
  CHECK_THROWS(WeightFamily::parse("cubic"));
}

TEST_CASE("weights are non-increasing in (0, 1]") {
  for (const auto& w : {WeightFamily::power_law(0.5), WeightFamily::power_law(3.0), WeightFamily::reciprocal(),
                        WeightFamily::log_sqrt(1.0), WeightFamily::log_sqrt(0.3)}) {
    double prev = weight_at(w, 1);
    CHECK(prev <= 1.0);
    for (std::size_t j = 2; j <= 1'000'000; ++j) {
      const double g = weight_at(w, j);
      if (!(g > 0.0 && g <= prev)) {
        FAIL_CHECK(w.describe() << " fails at j = " << j);
        break;
      }
      prev = g;
    }
  }
}

TEST_CASE("subset_weight never exceeds the weight of the smallest index") {
  const auto w = WeightFamily::power_law(1.5);
  for_each_subset_mask(10, [&](std::uint64_t mask) {
    const auto u = Subset::from_mask(mask);
    CHECK(subset_weight(w, u) <= weight_at(w, u.min_index()) * (1 + 1e-15));
  });
}

TEST_CASE("max_subset_jgamma examples") {
  CHECK(max_subset_jgamma(WeightFamily::reciprocal(), 10) == 1.0);
  CHECK(max_subset_jgamma(WeightFamily::power_law(1.0), 4) == Approx(1.0));
  CHECK(max_subset_jgamma(WeightFamily::explicit_list({1.0, 1.0}), 2) == Approx(2.0));
  CHECK(argmax_subset_jgamma(WeightFamily::explicit_list({1.0, 1.0}), 2) == Subset({2}));
  CHECK(argmax_subset_jgamma(WeightFamily::reciprocal(), 10) == Subset({1}));
}

TEST_CASE("max_subset_jgamma equals enumeration on random explicit families") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 20;
    std::vector<double> g(d);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (auto& x : g) x = u(rng);
    std::sort(g.begin(), g.end(), std::greater<>());
    std::vector<double> a(d);
    for (std::size_t j = 0; j < d; ++j) a[j] = static_cast<double>(j + 1) * g[j];
    const auto w = WeightFamily::explicit_list(g);
    CHECK(max_subset_jgamma(w, d) == Approx(oracle::max_subset_product(a)).epsilon(1e-12));
  }
}

TEST_CASE("partial_sum_jgamma") {
  CHECK(partial_sum_jgamma(WeightFamily::power_law(2.0), 1) == Approx(1.0));
  CHECK(partial_sum_jgamma(WeightFamily::power_law(2.0), 3) == Approx(1.0 + 2.0 / 8.0 + 3.0 / 27.0));
  CHECK(partial_sum_jgamma(WeightFamily::reciprocal(), 100) == Approx(100.0));
}

TEST_CASE("parallel_chunks covers the range once") {
  for (std::size_t threads : {1, 2, 4}) {
    set_thread_count(threads);
    std::vector<std::atomic<int>> hits(1000);
    parallel_chunks(hits.size(), 10, [&](std::size_t, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) hits[i]++;
    });
    CHECK(std::all_of(hits.begin(), hits.end(), [](const auto& h) { return h == 1; }));
  }
  set_thread_count(2);
  CHECK_THROWS_AS(parallel_chunks(100, 1,
                                  [](std::size_t c, std::size_t, std::size_t) {
                                    if (c == 1) throw std::runtime_error("boom");
                                  }),
                  std::runtime_error);
  set_thread_count(0);
  CHECK(thread_count() >= 1);
}
