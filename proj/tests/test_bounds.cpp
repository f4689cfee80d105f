#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qdl/bounds.hpp"
#include "qdl/lambert_w.hpp"

using doctest::Approx;
using namespace qdl;

TEST_CASE("projection_bound examples") {
  const auto bases = first_primes(3);
  const double l8 = std::log(8.0);
  CHECK(projection_bound(BoundModel::six_j_linear(), Subset({1, 2}), 8, bases) ==
        Approx(l8 * l8 * 6 * 12 / 8).epsilon(1e-13));
  CHECK(projection_bound(BoundModel::halton_h60(), Subset({1}), 8, bases) == Approx(1.5).epsilon(1e-13));
  CHECK(projection_bound(BoundModel::niederreiter_classic(), Subset({1}), 2, bases) == Approx(1.5).epsilon(1e-13));
}

TEST_CASE("projection_bound digital-sequence models") {
  const auto bases = first_primes(3);
  const Subset u({1, 3});
  const double n = 1000.0, l = std::log(n);
  CHECK(projection_bound(BoundModel::niederreiter_t16(2), u, n, bases) ==
        Approx(l * l / n * std::pow(16.0 / std::log(2.0), 2) * 3).epsilon(1e-12));
  CHECK(projection_bound(BoundModel::xing_niederreiter(4, 1.0, 2.0), u, n, bases) ==
        Approx(4.0 * l * l / n * 4.0 * 3).epsilon(1e-12));
  CHECK(projection_bound(BoundModel::hofer_niederreiter(4, 0.0, 3.0), u, n, bases) ==
        Approx(l * l / n * 9.0 * 3).epsilon(1e-12));
  CHECK(projection_bound(BoundModel::sobol(2.0), u, n, bases) ==
        Approx(l * l / n * 4.0 * (1 * std::log2(2.0)) * (3 * std::log2(std::log2(6.0)))).epsilon(1e-12));
}

TEST_CASE("projection_bound errors") {
  const auto bases = first_primes(3);
  CHECK_THROWS_AS(projection_bound(BoundModel::six_j_linear(), Subset({1}), 1, bases), std::invalid_argument);
  CHECK_THROWS_AS(projection_bound(BoundModel::sobol(std::nullopt), Subset({1}), 10, bases), std::invalid_argument);
  CHECK_THROWS_AS(projection_bound(BoundModel::sobol(1.0), Subset({1}), 10, bases), std::invalid_argument);
  CHECK_THROWS_AS(projection_bound(BoundModel::niederreiter_t16(6), Subset({1}), 10, bases), std::invalid_argument);
  CHECK_THROWS_AS(projection_bound(BoundModel::halton_h60(), Subset({4}), 10, bases), std::out_of_range);
}

TEST_CASE("parse_bound_kind") {
  CHECK(parse_bound_kind("HaltonH60") == BoundKind::HaltonH60);
  CHECK(parse_bound_kind("six-j-linear") == BoundKind::SixJLinear);
  CHECK(parse_bound_kind("niederreiter_classic") == BoundKind::NiederreiterClassic);
  CHECK_THROWS(parse_bound_kind("faure"));
}

TEST_CASE("six_j_domination") {
  auto d1 = six_j_domination(1);
  CHECK(d1.lhs == Approx(4 / std::log(2.0)));
  CHECK(d1.rhs == 6.0);
  auto d2 = six_j_domination(2);
  CHECK(d2.lhs == Approx(7 / std::log(3.0)));
  CHECK(d2.rhs == 12.0);
  auto d25 = six_j_domination(25);
  CHECK(d25.lhs == Approx(289 / std::log(97.0)));
  CHECK(d25.lhs == Approx(63.2).epsilon(1e-3));
  CHECK(d25.rhs == 150.0);

  const auto bases = first_primes(100000);
  for (std::size_t j = 1; j <= 100000; ++j) {
    const auto d = six_j_domination(j, bases);
    if (!(d.lhs <= d.rhs)) {
      FAIL_CHECK("domination fails at j = " << j);
      break;
    }
  }
}

TEST_CASE("HaltonH60 is dominated by SixJLinear") {
  const auto bases = first_primes(8);
  for (double n : {2.0, 10.0, 1e3, 1e9}) {
    for_each_subset_mask(8, [&](std::uint64_t m) {
      const auto u = Subset::from_mask(m);
      CHECK(projection_bound(BoundModel::halton_h60(), u, n, bases) <=
            projection_bound(BoundModel::six_j_linear(), u, n, bases) * (1 + 1e-14));
    });
  }
}

TEST_CASE("weighted_bound_max") {
  CHECK(weighted_bound_max(WeightFamily::unit(1), 1, 3) == Approx(2 * std::log(3.0)).epsilon(1e-13));
  CHECK(weighted_bound_max(WeightFamily::reciprocal(), 5, 3) ==
        Approx(std::pow(6 * std::log(3.0), 5) / 3).epsilon(1e-13));
  // Every factor below 1: the best single factor wins.
  const auto tiny = WeightFamily::power_law(20.0);
  CHECK(weighted_bound_max(tiny, 6, 2) == Approx(6 * std::log(2.0) / 2).epsilon(1e-13));
}

TEST_CASE("weighted_bound_max closed form equals enumeration") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + trial % 20;
    std::vector<double> g(d);
    std::uniform_real_distribution<double> u(0.001, 1.0);
    for (auto& x : g) x = u(rng);
    std::sort(g.begin(), g.end(), std::greater<>());
    const double n = std::exp(std::uniform_real_distribution<double>(std::log(2.0), 20.0)(rng));
    std::vector<double> a(d);
    for (std::size_t j = 0; j < d; ++j) a[j] = 6.0 * static_cast<double>(j + 1) * g[j] * std::log(n);
    CHECK(weighted_bound_max(WeightFamily::explicit_list(g), d, n) ==
          Approx(oracle::max_subset_product(a) / n).epsilon(1e-12));
  }
}

TEST_CASE("weighted_bound_product") {
  CHECK(weighted_bound_product(WeightFamily::unit(1), 1, 3) == Approx(2 * std::log(3.0)).epsilon(1e-13));
  const double l2 = std::log(2.0);
  CHECK(weighted_bound_product(WeightFamily::unit(2), 2, 2) ==
        Approx((-1 + (1 + 6 * l2) * (1 + 12 * l2)) / 2).epsilon(1e-13));
  for (std::size_t d = 1; d <= 15; ++d) {
    for (double n : {2.0, 17.0, 1e6}) {
      const auto w = WeightFamily::power_law(1.3);
      std::vector<double> a(d);
      for (std::size_t j = 1; j <= d; ++j) a[j - 1] = 6.0 * j * weight_at(w, j) * std::log(n);
      const double ref = oracle::subset_product_sum(a) / n;
      CHECK(std::abs(weighted_bound_product(w, d, n) - ref) <= 1e-10 * ref);
      CHECK(weighted_bound_max(w, d, n) <= weighted_bound_product(w, d, n) * (1 + 1e-14));
    }
  }
  CHECK(std::isfinite(weighted_bound_product(WeightFamily::power_law(2.0), 10000, 1e12)));
}

TEST_CASE("min_improved_weighted_bound") {
  CHECK(min_improved_weighted_bound(WeightFamily::unit(1), 1, 3) == Approx(1.0));
  CHECK(min_improved_weighted_bound(WeightFamily::unit(1), 1, 1e6) ==
        Approx(6 * std::log(1e6) / 1e6).epsilon(1e-12));
  CHECK(min_improved_weighted_bound(WeightFamily::explicit_list({0.5, 0.1}), 2, 3) == Approx(0.5));

  for (const auto& w : {WeightFamily::reciprocal(), WeightFamily::power_law(0.5), WeightFamily::power_law(2.0),
                        WeightFamily::log_sqrt(0.5)}) {
    for (std::size_t d : {1, 3, 8, 12}) {
      for (double n : {2.0, 50.0, 1e5, 1e12}) {
        const double v = min_improved_weighted_bound(w, d, n);
        CHECK(v <= weighted_bound_max(w, d, n) * (1 + 1e-12));
        CHECK(v <= weight_at(w, 1) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("lambert_w") {
  CHECK(lambert_w(0.0) == 0.0);
  CHECK(lambert_w(std::numbers::e) == Approx(1.0).epsilon(1e-15));
  CHECK(lambert_w(1.0) == Approx(0.567143290409784).epsilon(1e-14));
  CHECK(lambert_w(6.0 / std::numbers::e) == Approx(0.898636326608428).epsilon(1e-14));
  CHECK_THROWS_AS(lambert_w(-0.1), std::domain_error);
  for (double lz = -10; lz <= 30; lz += 0.25) {
    const double z = std::pow(10.0, lz);
    const double w = lambert_w(z);
    CHECK(std::abs(w * std::exp(w) - z) <= 1e-12 * std::max(1.0, z));
  }
  CHECK(lambert_w_asymptotic(1e10) == Approx(lambert_w(1e10)).epsilon(1e-2));
}

TEST_CASE("solve_power_equation") {
  CHECK(solve_power_equation(1.0, 4.0) == Approx(2.0).epsilon(1e-14));
  CHECK(solve_power_equation(1.0, 27.0) == Approx(3.0).epsilon(1e-14));
}

TEST_CASE("ell_star") {
  CHECK(ell_star(std::numbers::e) == Approx(1.0 / 0.898636326608428).epsilon(1e-13));
  CHECK(ell_star(std::numbers::e) == Approx(1.112797213277736).epsilon(1e-13));
  for (double n : {10.0, 1e3, 1e6, 1e12}) {
    const double l = ell_star(n);
    // log-domain residual relative to the size of either side
    CHECK(std::abs(ell_star_log_residual(n, l)) <= 1e-9);
  }
  CHECK_THROWS_AS(ell_star(1.0), std::invalid_argument);
}

TEST_CASE("delta_star") {
  CHECK(delta_star(1e8) == Approx(0.995014834687731).epsilon(1e-12));
  CHECK(delta_star(1e7) == Approx(1.015272538747560).epsilon(1e-12));
  CHECK(delta_star(1e7) > 1.0);
  CHECK(delta_star(1e8) < 1.0);
  CHECK(delta_star_unit_crossing() == Approx(54159516.4576).epsilon(1e-9));
  CHECK(delta_star_from_log(std::exp(20.0)) == Approx(0.587643806922839).epsilon(1e-12));
  CHECK(delta_star_from_log(1e6 * std::log(10.0)) == Approx(0.616087751387951).epsilon(1e-12));
  // Slowly decreasing towards 1/2.
  CHECK(delta_star_from_log(1e300) < 0.51);
  double prev = delta_star(1e3);
  for (double ln = std::log(1e4); ln < 1e200; ln *= 3) {
    const double v = delta_star_from_log(ln);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(delta_star(9.0), std::invalid_argument);
}

TEST_CASE("halton_weighted_bound_final") {
  const double n = 1e8;
  CHECK(halton_weighted_bound_final(WeightFamily::reciprocal(), 7, n) ==
        Approx(std::pow(n, -(1 - delta_star(n)))).epsilon(1e-13));
  const auto small = WeightFamily::power_law(2.0);
  CHECK(halton_weighted_bound_final(small, 5, n) == Approx(std::pow(n, -(1 - delta_star(n)))).epsilon(1e-13));
  // Unanchored constant 12 dominates 6 once N is past the crossover near 143.
  for (double m : {150.0, 1e3, 1e8, 1e12}) {
    CHECK(halton_weighted_bound_final(small, 5, m, DiscrepancyVariant::Unanchored) >=
          halton_weighted_bound_final(small, 5, m, DiscrepancyVariant::Anchored));
  }
}
