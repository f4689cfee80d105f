#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qdl/bounds.hpp"
#include "qdl/constants.hpp"

using doctest::Approx;
using namespace qdl;

TEST_CASE("sigma_w values") {
  CHECK(sigma_w(3.0, 0) == Approx(7.21234141895757).epsilon(1e-11));
  CHECK(sigma_w(2.0, 0) == Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-11));
  CHECK(sigma_w(3.0, 5) == Approx(0.0983691967353435).epsilon(1e-11));
  CHECK_THROWS_AS(sigma_w(1.0, 3), std::invalid_argument);
  const auto s = sigma_w_bracket(1.5, 10);
  CHECK(s.lower <= s.value);
  CHECK(s.value <= s.upper);
  CHECK((s.upper - s.lower) <= 1e-8 * s.value);
}

TEST_CASE("sigma_w is decreasing and sandwiched") {
  for (double alpha : {1.5, 2.0, 3.0, 4.0}) {
    double prev = sigma_w(alpha, 0);
    for (std::uint64_t w : {1, 2, 5, 10, 100, 1000, 100000, 2000000}) {
      const double s = sigma_w(alpha, w);
      CHECK(s < prev);
      const double wd = static_cast<double>(w);
      CHECK(s >= 6 / ((alpha - 1) * std::pow(wd + 1, alpha - 1)));
      CHECK(s <= 6 / ((alpha - 1) * std::pow(wd, alpha - 1)));
      prev = s;
    }
  }
}

TEST_CASE("c_delta_hn") {
  const auto r = c_delta_hn(3.0, 0.9);
  CHECK(r.w == 5.0);
  REQUIRE(r.sigma_w.has_value());
  CHECK(*r.sigma_w == Approx(0.0983691967353435).epsilon(1e-10));
  CHECK(r.c_delta.log10() == Approx(5.23945).epsilon(1e-5));
  CHECK(c_delta_hn(2.0, 0.5).w == 130.0);
  CHECK(c_delta_hn(2.0, 0.5).c_delta.log10() == Approx(176.408).epsilon(1e-5));
}

TEST_CASE("c_delta_hn w is minimal") {
  for (double alpha : {1.5, 2.0, 3.0, 4.0}) {
    double prev_w = 0.0;
    for (double delta : {0.9, 0.5, 0.1}) {
      const auto r = c_delta_hn(alpha, delta);
      const double threshold = delta / (1 + sigma_w(alpha, 0));
      const auto w = static_cast<std::uint64_t>(r.w);
      CHECK(sigma_w(alpha, w) <= threshold);
      if (w > 0) CHECK(sigma_w(alpha, w - 1) > threshold);
      CHECK(r.w >= prev_w);
      prev_w = r.w;
    }
  }
}

TEST_CASE("c_delta_table cells") {
  const auto a = c_delta_table(3.0, 0.9);
  CHECK(a.w == Approx(2.651484).epsilon(1e-6));
  CHECK(a.c_delta.to_double() == Approx(24.5412).epsilon(1e-5));
  CHECK(c_delta_table(1.5, 0.5).c_delta.log10() == Approx(139333.034).epsilon(1e-8));
  CHECK(c_delta_table(4.0, 0.1).c_delta.to_double() == Approx(1922.01).epsilon(1e-5));
  CHECK(c_delta_table(1.5, 0.1).c_delta.log10() == Approx(5152589.092).epsilon(1e-9));
  CHECK(c_delta_table(2.0, 0.9).c_delta.log10() == Approx(42.70104).epsilon(1e-6));
}

TEST_CASE("w_closed_form") {
  const auto w = w_lower_example();
  CHECK(w.log10() == Approx(45.6348108539).epsilon(1e-11));
  CHECK(w.to_string(6) == "4.31331E45");
  CHECK(w == w_closed_form(1.1, 0.1));
  CHECK(w.log10() == Approx(10 * std::log10(36600.0)).epsilon(1e-13));
  // alpha close to 1 stays finite in log domain.
  CHECK(std::isfinite(w_closed_form(1.01, 0.5).log10()));
}

TEST_CASE("c_delta_alt") {
  const auto r = c_delta_alt(2.0, 0.5);
  CHECK(r.w == Approx(24.0).epsilon(1e-13));
  CHECK(r.c_delta.log() == Approx(std::log(2 * std::exp(2.0) / std::numbers::pi) - 0.5 * std::log(6.0) + 12.0)
                               .epsilon(1e-13));
  REQUIRE(r.maximizer_verified.has_value());
  CHECK(*r.maximizer_verified);

  for (double alpha : {1.5, 2.0, 3.0, 4.0}) {
    for (double delta : {0.1, 0.5, 0.9}) {
      const auto c = c_delta_alt(alpha, delta);
      auto g = [&](double x) { return alpha * std::pow(6 * x, 1 / alpha) - delta * x; };
      CHECK(g(c.w) >= g(0.9 * c.w));
      CHECK(g(c.w) >= g(1.1 * c.w));
      CHECK(c.maximizer_verified.value());
    }
  }
  const auto huge = c_delta_alt(1.05, 0.5);
  CHECK(std::isfinite(huge.c_delta.log10()));
  CHECK(huge.c_delta.log10() > 1e15);

  CHECK(c_delta_alt(2.0, 0.5).c_delta.log10() == Approx(5.49493).epsilon(1e-5));
}

TEST_CASE("parse_route") {
  CHECK(parse_route("table") == CDeltaRoute::ClosedFormTable);
  CHECK(parse_route("HN") == CDeltaRoute::HNLemma3);
  CHECK(parse_route("alt") == CDeltaRoute::StirlingX0);
  CHECK_THROWS(parse_route("other"));
  CHECK(c_delta(3.0, 0.9, CDeltaRoute::ClosedFormTable).c_delta == c_delta_table(3.0, 0.9).c_delta);
}

TEST_CASE("stirling_max_ratio") {
  const auto one = stirling_max_ratio(1.0);
  CHECK(one.argmax_k == 1);
  CHECK(one.value() == Approx(1.0));
  const auto two = stirling_max_ratio(2.0);
  CHECK((two.argmax_k == 1 || two.argmax_k == 2));
  CHECK(two.value() == Approx(2.0));
  const auto ten = stirling_max_ratio(10.0);
  CHECK(ten.value() == Approx(2755.7319).epsilon(1e-7));
  CHECK(ten.bound() == Approx(5557.569).epsilon(1e-6));
  CHECK(stirling_max_ratio(10.0, 3).argmax_k == 3);
  CHECK(stirling_max_ratio(10.0, 3).value() == Approx(1000.0 / 6.0));
  CHECK_THROWS(stirling_max_ratio(0.0));
}

TEST_CASE("stirling_max_ratio agrees with enumeration and its bound") {
  for (double x = 0.05; x <= 1000.0; x *= 1.07) {
    const auto s = stirling_max_ratio(x);
    double best = -1e300;
    for (int k = 1; k <= 1100; ++k) best = std::max(best, k * std::log(x) - std::lgamma(k + 1.0));
    CHECK(s.log_max == Approx(best).epsilon(1e-12));
    CHECK(s.log_max <= s.log_bound);
    const auto y = static_cast<std::uint64_t>(std::ceil(x));
    CHECK((s.argmax_k == std::max<std::uint64_t>(1, y - 1)));
  }
}

TEST_CASE("bound_chain_check") {
  CHECK(bound_chain_check(2.0, 0.5, 1e3));
  CHECK(bound_chain_check(1.5, 0.9, 1e6));
  for (double alpha : {1.5, 2.0, 3.0}) {
    for (double delta : {0.1, 0.5, 0.9}) {
      for (double ln = std::log(3.0); ln <= std::log(1e12); ln += 0.1) {
        CHECK(bound_chain_check(alpha, delta, std::exp(ln)));
      }
    }
  }
}

TEST_CASE("n_min") {
  CHECK(std::get<std::uint64_t>(n_min({0.5, LogValue::from_double(1.0), 0.0})) == 2);
  CHECK(std::get<std::uint64_t>(n_min({0.5, LogValue::from_double(2.0), 0.0})) == 4);
  const auto big = n_min({0.1, LogValue::from_double(24.5), 0.9});
  REQUIRE(std::holds_alternative<LogValue>(big));
  CHECK(std::get<LogValue>(big).log10() == Approx(10 * std::log10(245.0)).epsilon(1e-13));
  CHECK(to_string(big).rfind("7.79221", 0) == 0);
  CHECK_THROWS_AS(n_min({0.5, LogValue::from_double(2.0), 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(n_min({1.5, LogValue::from_double(2.0), 0.0}), std::invalid_argument);
}

TEST_CASE("n_min monotonicity") {
  auto log10_of = [](const NMin& n) {
    if (const auto* v = std::get_if<std::uint64_t>(&n)) return std::log10(static_cast<double>(*v));
    return std::get<LogValue>(n).log10();
  };
  for (double c : {1.0, 3.0, 24.5, 1e5}) {
    double prev = -1;
    for (double eps : {0.9, 0.5, 0.1, 0.01}) {
      const double v = log10_of(n_min({eps, LogValue::from_double(c), 0.5}));
      CHECK(v >= prev);
      prev = v;
    }
    prev = -1;
    for (double delta : {0.0, 0.3, 0.6, 0.9}) {
      const double v = log10_of(n_min({0.1, LogValue::from_double(c), delta}));
      CHECK(v >= prev);
      prev = v;
    }
  }
  double prev = -1;
  for (double c : {1.0, 2.0, 50.0, 1e10}) {
    const double v = log10_of(n_min({0.2, LogValue::from_double(c), 0.4}));
    CHECK(v >= prev);
    prev = v;
  }
}
