#include "qdl/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "qdl/lambert_w.hpp"

namespace qdl {

namespace {

void check_n(double n) {
  if (!(n >= 2.0) || !std::isfinite(n)) {
    throw std::invalid_argument(fmt::format("bound evaluation needs N >= 2 (got {})", n));
  }
}

std::string normalize(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

// log(6 j gamma_j log N) for each j <= d.
std::vector<double> log_factors(const WeightFamily& w, std::size_t d, double log_n, double c) {
  if (d == 0) throw std::invalid_argument("weighted bound: d must be >= 1");
  std::vector<double> f(d);
  const double base = std::log(c * log_n);
  for (std::size_t j = 1; j <= d; ++j) f[j - 1] = base + std::log(static_cast<double>(j)) + w.log_at(j);
  return f;
}

}  // namespace

void BoundModel::validate() const {
  switch (kind) {
    case BoundKind::HaltonH60:
    case BoundKind::NiederreiterClassic:
    case BoundKind::SixJLinear:
      return;
    case BoundKind::NiederreiterT16:
      if (!is_prime_power(base)) throw std::invalid_argument(fmt::format("base {} is not a prime power", base));
      return;
    case BoundKind::XingNiederreiter:
    case BoundKind::HoferNiederreiter:
      if (!is_prime_power(base)) throw std::invalid_argument(fmt::format("base {} is not a prime power", base));
      if (!(genus >= 0.0)) throw std::invalid_argument("genus must be >= 0");
      [[fallthrough]];
    case BoundKind::Sobol:
      if (!constant) throw std::invalid_argument(to_string(kind) + " bound needs the constant C");
      if (!(*constant > 1.0)) throw std::invalid_argument("the constant C must be > 1");
      return;
  }
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::HaltonH60: return "HaltonH60";
    case BoundKind::NiederreiterClassic: return "NiederreiterClassic";
    case BoundKind::SixJLinear: return "SixJLinear";
    case BoundKind::NiederreiterT16: return "NiederreiterT16";
    case BoundKind::XingNiederreiter: return "XingNiederreiter";
    case BoundKind::HoferNiederreiter: return "HoferNiederreiter";
    case BoundKind::Sobol: return "Sobol";
  }
  return "?";
}

BoundKind parse_bound_kind(std::string_view name) {
  const std::string key = normalize(name);
  for (auto k : {BoundKind::HaltonH60, BoundKind::NiederreiterClassic, BoundKind::SixJLinear,
                 BoundKind::NiederreiterT16, BoundKind::XingNiederreiter, BoundKind::HoferNiederreiter,
                 BoundKind::Sobol}) {
    if (normalize(to_string(k)) == key) return k;
  }
  throw std::invalid_argument("unknown bound model '" + std::string(name) + "'");
}

double projection_bound_log(const BoundModel& model, const Subset& u, double n, const PrimeBases& bases) {
  check_n(n);
  model.validate();
  const double log_n = std::log(n);
  const double k = static_cast<double>(u.size());
  const double prefix = k * std::log(log_n) - log_n;  // (log N)^{|u|} / N
  double acc = 0.0;
  switch (model.kind) {
    case BoundKind::HaltonH60:
      u.check_within(bases.dimension());
      acc = prefix;
      for (auto j : u.indices()) {
        const double b = static_cast<double>(bases.base(j));
        acc += std::log((3.0 * b - 2.0) / std::log(b));
      }
      return acc;
    case BoundKind::NiederreiterClassic:
      u.check_within(bases.dimension());
      acc = -log_n;
      for (auto j : u.indices()) {
        const double b = static_cast<double>(bases.base(j));
        acc += std::log((b - 1.0) / (2.0 * std::log(b)) * log_n + (b + 3.0) / 2.0);
      }
      return acc;
    case BoundKind::SixJLinear:
      acc = prefix;
      for (auto j : u.indices()) acc += std::log(6.0 * static_cast<double>(j));
      return acc;
    case BoundKind::NiederreiterT16: {
      const double b = static_cast<double>(model.base);
      acc = prefix + k * std::log(4.0 * b * b / std::log(b));
      for (auto j : u.indices()) acc += std::log(static_cast<double>(j));
      return acc;
    }
    case BoundKind::XingNiederreiter:
    case BoundKind::HoferNiederreiter:
      acc = model.genus * std::log(static_cast<double>(model.base)) + prefix + k * std::log(*model.constant);
      for (auto j : u.indices()) acc += std::log(static_cast<double>(j));
      return acc;
    case BoundKind::Sobol:
      acc = prefix + k * std::log(*model.constant);
      for (auto j : u.indices()) {
        const double x = static_cast<double>(j);
        acc += std::log(x * std::log2(std::log2(x + 3.0)));
      }
      return acc;
  }
  throw std::logic_error("unhandled bound model");
}

double projection_bound(const BoundModel& model, const Subset& u, double n, const PrimeBases& bases) {
  return std::exp(projection_bound_log(model, u, n, bases));
}

Domination six_j_domination(std::size_t j, const PrimeBases& bases) {
  const double b = static_cast<double>(bases.base(j));
  return {(3.0 * b - 2.0) / std::log(b), 6.0 * static_cast<double>(j)};
}

Domination six_j_domination(std::size_t j) {
  if (j == 0) throw std::invalid_argument("six_j_domination: j must be >= 1");
  return six_j_domination(j, first_primes(j));
}

double weighted_bound_max(const WeightFamily& w, std::size_t d, double n) {
  check_n(n);
  const auto f = log_factors(w, d, std::log(n), 6.0);
  double positive = 0.0;
  bool any = false;
  for (double x : f) {
    if (x > 0.0) {
      positive += x;
      any = true;
    }
  }
  const double best = any ? positive : *std::max_element(f.begin(), f.end());
  return std::exp(best - std::log(n));
}

double weighted_bound_product(const WeightFamily& w, std::size_t d, double n) {
  check_n(n);
  const auto f = log_factors(w, d, std::log(n), 6.0);
  double s = 0.0;
  for (double x : f) s += x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  return std::expm1(s) / n;
}

double min_improved_weighted_bound(const WeightFamily& w, std::size_t d, double n) {
  check_n(n);
  check_enumerable(d);
  if (d == 0) throw std::invalid_argument("min_improved_weighted_bound: d must be >= 1");
  const double log_n = std::log(n);
  const double log_6logn = std::log(6.0 * log_n);
  std::vector<double> log_gamma(d), log_jgamma(d);
  for (std::size_t j = 1; j <= d; ++j) {
    log_gamma[j - 1] = w.log_at(j);
    log_jgamma[j - 1] = std::log(static_cast<double>(j)) + log_gamma[j - 1];
  }
  double best = -std::numeric_limits<double>::infinity();
  for_each_subset_mask(d, [&](std::uint64_t mask) {
    double sum_gamma = 0.0, sum_jgamma = 0.0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(m));
      sum_gamma += log_gamma[bit];
      sum_jgamma += log_jgamma[bit];
    }
    const auto card = static_cast<double>(std::popcount(mask));
    // prod(j gamma_j) min{prod 1/j, (6 log N)^k / N} = min{gamma_u, prod(6 j gamma_j log N) / N}
    best = std::max(best, std::min(sum_gamma, sum_jgamma + card * log_6logn - log_n));
  });
  return std::exp(best);
}

double variant_constant(DiscrepancyVariant v) { return v == DiscrepancyVariant::Anchored ? 6.0 : 12.0; }

double ell_star(double n, DiscrepancyVariant v) {
  if (!(n > 1.0)) throw std::invalid_argument("ell_star: needs N > 1");
  const double log_n = std::log(n);
  return log_n / lambert_w(variant_constant(v) / std::numbers::e * log_n * log_n);
}

double ell_star_log_residual(double n, double ell, DiscrepancyVariant v) {
  const double log_n = std::log(n);
  const double lhs = ell * (1.0 - std::log(ell));
  const double rhs = ell * std::log(variant_constant(v) * log_n) - log_n;
  return lhs - rhs;
}

double delta_star_from_log(double log_n, DiscrepancyVariant v) {
  if (!(log_n >= std::log(10.0))) throw std::invalid_argument("delta_star: needs N >= 10");
  const double ll = std::log(log_n);
  const double lc = std::log(variant_constant(v));
  const double x = 2.0 * ll + lc - 1.0;
  return (ll + lc) / (x - std::log(x));
}

double delta_star(double n, DiscrepancyVariant v) {
  if (!(n >= 10.0)) throw std::invalid_argument(fmt::format("delta_star: needs N >= 10 (got {})", n));
  return delta_star_from_log(std::log(n), v);
}

double delta_star_unit_crossing(DiscrepancyVariant v) {
  // delta* decreases through 1 between N = 10 and N = 1e300.
  double lo = std::log(10.0);
  double hi = std::log(1e300);
  if (delta_star_from_log(lo, v) <= 1.0) return 10.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (delta_star_from_log(mid, v) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

double halton_weighted_bound_final(const WeightFamily& w, std::size_t d, double n, DiscrepancyVariant v) {
  const double ds = delta_star(n, v);
  return std::exp(-(1.0 - ds) * std::log(n)) * max_subset_jgamma(w, d);
}

}  // namespace qdl
