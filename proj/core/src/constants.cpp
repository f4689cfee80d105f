#include "qdl/constants.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace qdl {

namespace {

constexpr std::uint64_t kExplicitTerms = 1'000'000;

void check_alpha_delta(double alpha, double delta) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be > 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

// sum_{j > cut} j^-alpha: Euler-Maclaurin estimate clamped into the integral
// bracket [int_{cut+1}^inf, int_cut^inf].
struct Tail {
  double value, lower, upper;
};

Tail zeta_tail(double alpha, double cut) {
  const double am1 = alpha - 1.0;
  const double lower = std::pow(cut + 1.0, -am1) / am1;
  const double upper = std::pow(cut, -am1) / am1;
  const double em = upper - 0.5 * std::pow(cut, -alpha) + alpha / 12.0 * std::pow(cut, -alpha - 1.0) -
                    alpha * (alpha + 1.0) * (alpha + 2.0) / 720.0 * std::pow(cut, -alpha - 3.0);
  return {std::clamp(em, lower, upper), lower, upper};
}

// Suffix sums s[j] = sum_{k=j}^{cut} k^-alpha for first <= j <= cut + 1,
// accumulated smallest term first with compensation.
class SuffixSums {
 public:
  SuffixSums(double alpha, std::uint64_t first, std::uint64_t cut) : first_(first), sums_(cut + 2 - first, 0.0) {
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t j = cut; j >= first; --j) {
      const double y = std::exp(-alpha * std::log(static_cast<double>(j))) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      sums_[j - first] = sum;
      if (j == 1) break;
    }
  }
  double from(std::uint64_t j) const { return sums_[j - first_]; }

 private:
  std::uint64_t first_;
  std::vector<double> sums_;
};

SigmaW sigma_from(double alpha, std::uint64_t w, const SuffixSums* sums) {
  const std::uint64_t cut = std::max(w, kExplicitTerms);
  const double partial = w >= cut ? 0.0 : sums ? sums->from(w + 1) : SuffixSums(alpha, w + 1, cut).from(w + 1);
  const Tail t = zeta_tail(alpha, static_cast<double>(cut));
  return {6.0 * (partial + t.value), 6.0 * (partial + t.lower), 6.0 * (partial + t.upper)};
}

}  // namespace

SigmaW sigma_w_bracket(double alpha, std::uint64_t w) {
  if (!(alpha > 1.0)) throw std::invalid_argument("sigma_w: the series diverges for alpha <= 1");
  return sigma_from(alpha, w, nullptr);
}

double sigma_w(double alpha, std::uint64_t w) { return sigma_w_bracket(alpha, w).value; }

std::string to_string(CDeltaRoute route) {
  switch (route) {
    case CDeltaRoute::HNLemma3: return "hn";
    case CDeltaRoute::ClosedFormTable: return "table";
    case CDeltaRoute::StirlingX0: return "alt";
  }
  return "?";
}

CDeltaRoute parse_route(std::string_view name) {
  std::string key;
  for (char c : name) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "hn" || key == "hnlemma3") return CDeltaRoute::HNLemma3;
  if (key == "table" || key == "closedformtable") return CDeltaRoute::ClosedFormTable;
  if (key == "alt" || key == "stirlingx0") return CDeltaRoute::StirlingX0;
  throw std::invalid_argument("unknown c_delta route '" + std::string(name) + "' (expected table, hn or alt)");
}

CDeltaReport c_delta_hn(double alpha, double delta) {
  check_alpha_delta(alpha, delta);
  const SuffixSums sums(alpha, 1, kExplicitTerms);
  auto sigma = [&](std::uint64_t w) { return sigma_from(alpha, w, &sums).value; };
  const double threshold = delta / (1.0 + sigma(0));
  auto satisfies = [&](std::uint64_t w) { return sigma(w) <= threshold; };

  std::uint64_t w = 0;
  if (!satisfies(0)) {
    std::uint64_t lo = 0;  // violates
    std::uint64_t hi = 1;
    while (!satisfies(hi)) {
      lo = hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (satisfies(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    w = hi;
  }
  const double s = sigma(w);
  const double wd = static_cast<double>(w);
  const LogValue c = w == 0 ? LogValue::from_log10(0.0) : LogValue::from_log10(wd * std::log10(1.0 + 1.0 / s));
  return {alpha, delta, CDeltaRoute::HNLemma3, wd, s, c, std::nullopt};
}

LogValue w_closed_form(double alpha, double delta) {
  check_alpha_delta(alpha, delta);
  const double am1 = alpha - 1.0;
  const double base = 6.0 / (am1 * delta) * (1.0 + 6.0 / am1);
  const double log10_power = std::log10(base) / am1;
  if (log10_power < 15.0) {
    return LogValue::from_double(std::max(0.0, std::pow(base, 1.0 / am1) - 1.0));
  }
  // The -1 is below double resolution here.
  return LogValue::from_log10(log10_power);
}

LogValue w_lower_example() { return w_closed_form(1.1, 0.1); }

CDeltaReport c_delta_table(double alpha, double delta) {
  check_alpha_delta(alpha, delta);
  const double am1 = alpha - 1.0;
  const LogValue w = w_closed_form(alpha, delta);
  LogValue c = LogValue::from_log10(0.0);
  if (!w.is_zero()) {
    // log10 c = w log10(1 + (alpha-1) w^(alpha-1) / 6)
    const double log10_t = std::log10(am1 / 6.0) + am1 * w.log10();
    const double log10_inner = log10_t > 15.0 ? log10_t + std::log10(1.0 + std::pow(10.0, -log10_t))
                                              : std::log10(1.0 + std::pow(10.0, log10_t));
    const double log10_c = (LogValue::from_log10(std::log10(log10_inner)) * w).to_double();
    if (!std::isfinite(log10_c)) {
      throw std::overflow_error(fmt::format("c_delta_table: c_delta exceeds the LogValue range at alpha = {}", alpha));
    }
    c = LogValue::from_log10(log10_c);
  }
  return {alpha, delta, CDeltaRoute::ClosedFormTable, w.to_double(), std::nullopt, c, std::nullopt};
}

CDeltaReport c_delta_alt(double alpha, double delta) {
  check_alpha_delta(alpha, delta);
  const double log_x0 = (std::log(6.0) - alpha * std::log(delta)) / (alpha - 1.0);
  double exponent = 0.0;
  if (log_x0 < 700.0) {
    const double x0 = std::exp(log_x0);
    exponent = alpha * std::pow(6.0 * x0, 1.0 / alpha) - delta * x0;
  } else {
    // At the maximiser (6 x0)^(1/alpha) = delta x0, so the exponent is
    // (alpha - 1) delta x0.
    exponent = std::exp(std::log((alpha - 1.0) * delta) + log_x0);
  }
  const double log_c = alpha / 2.0 * std::log(2.0 * std::numbers::e * std::numbers::e / std::numbers::pi) -
                       0.5 * std::log(6.0) + exponent;
  if (!std::isfinite(log_c)) throw std::overflow_error("c_delta_alt: c_delta exceeds the LogValue range");

  // d/dx [alpha (6x)^(1/alpha) - delta x] = 6^(1/alpha) x^(1/alpha - 1) - delta; its
  // sign is that of log6/alpha + (1/alpha - 1) log x - log delta.
  auto slope_sign = [&](double log_x) {
    return std::log(6.0) / alpha + (1.0 / alpha - 1.0) * log_x - std::log(delta);
  };
  const bool verified = slope_sign(log_x0 - std::log(2.0)) > 0.0 && slope_sign(log_x0 + std::log(2.0)) < 0.0;
  return {alpha, delta, CDeltaRoute::StirlingX0, std::exp(log_x0), std::nullopt, LogValue::from_log(log_c), verified};
}

CDeltaReport c_delta(double alpha, double delta, CDeltaRoute route) {
  switch (route) {
    case CDeltaRoute::HNLemma3: return c_delta_hn(alpha, delta);
    case CDeltaRoute::ClosedFormTable: return c_delta_table(alpha, delta);
    case CDeltaRoute::StirlingX0: return c_delta_alt(alpha, delta);
  }
  throw std::logic_error("unhandled route");
}

double StirlingMax::value() const { return std::exp(log_max); }
double StirlingMax::bound() const { return std::exp(log_bound); }

StirlingMax stirling_max_ratio(double x, std::optional<std::uint64_t> d_cap) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("stirling_max_ratio: x must be > 0");
  if (d_cap && *d_cap == 0) throw std::invalid_argument("stirling_max_ratio: cap must be >= 1");
  const double y = std::ceil(x);
  auto k = static_cast<std::uint64_t>(std::max(1.0, y - 1.0));
  if (d_cap) k = std::min(k, *d_cap);
  const double kd = static_cast<double>(k);
  const double log_max = kd * std::log(x) - std::lgamma(kd + 1.0);
  const double log_bound = std::log(2.0) + y - 0.5 * std::log(2.0 * std::numbers::pi * y);
  return {k, log_max, log_bound};
}

bool bound_chain_check(double alpha, double delta, double n) {
  check_alpha_delta(alpha, delta);
  if (!(n >= 3.0)) throw std::invalid_argument("bound_chain_check: needs N >= 3");
  const double log_n = std::log(n);
  const double x = std::pow(6.0 * log_n, 1.0 / alpha);
  const double lhs = alpha * stirling_max_ratio(x).log_max - log_n;
  const double rhs = c_delta_alt(alpha, delta).c_delta.log() - (1.0 - delta) * log_n;
  return lhs <= rhs;
}

NMin n_min(const NMinQuery& q) {
  if (!(q.epsilon > 0.0 && q.epsilon < 1.0)) throw std::invalid_argument("n_min: epsilon must lie in (0, 1)");
  if (!(q.delta >= 0.0 && q.delta < 1.0)) throw std::invalid_argument("n_min: delta must lie in [0, 1)");
  if (q.c_delta.is_zero()) return std::uint64_t{0};
  const double log10_n = (q.c_delta.log10() - std::log10(q.epsilon)) / (1.0 - q.delta);
  if (log10_n < 15.0) {
    const double value = std::pow(10.0, log10_n);
    const double nearest = std::round(value);
    // Absorb representation noise around exact integers (e.g. (2/0.5)^1 = 4).
    const double exact = std::abs(value - nearest) <= 1e-12 * std::max(1.0, value) ? nearest : std::ceil(value);
    return static_cast<std::uint64_t>(exact);
  }
  return LogValue::from_log10(log10_n);
}

std::string to_string(const NMin& n) {
  if (const auto* v = std::get_if<std::uint64_t>(&n)) return std::to_string(*v);
  return std::get<LogValue>(n).to_string(6);
}

const std::vector<ReferenceCell>& reference_c_delta_table() {
  using P = CellPrecision;
  static const std::vector<ReferenceCell> table = {
      {1.5, 0.9, LogValue::parse("4E35714"), P::Mantissa, "4x10^35714"},
      {1.5, 0.5, LogValue::parse("1E139333"), P::PowerOfTen, "10^139333"},
      {1.5, 0.1, LogValue::parse("1E5152589"), P::PowerOfTen, "10^5152589"},
      {2.0, 0.9, LogValue::parse("5E42"), P::Mantissa, "5x10^42"},
      {2.0, 0.5, LogValue::parse("1.6E97"), P::Mantissa, "1.6x10^97"},
      {2.0, 0.1, LogValue::parse("1.7E775"), P::Mantissa, "1.7x10^775"},
      {3.0, 0.9, LogValue::parse("24.5"), P::Small, "24.5"},
      {3.0, 0.5, LogValue::parse("1129.5"), P::Small, "1129.5"},
      {3.0, 0.1, LogValue::parse("1.7E15"), P::Mantissa, "1.7x10^15"},
      {4.0, 0.9, LogValue::parse("1.29"), P::Small, "1.29"},
      {4.0, 0.5, LogValue::parse("2.5"), P::Small, "2.5"},
      {4.0, 0.1, LogValue::parse("1922"), P::Small, "1922"},
  };
  return table;
}

bool within_tolerance(const ReferenceCell& cell, const LogValue& computed) {
  switch (cell.precision) {
    case CellPrecision::Mantissa: return std::abs(computed.log10() - cell.value.log10()) <= 1.0;
    case CellPrecision::PowerOfTen: return std::abs(computed.log10() - cell.value.log10()) <= 5.0;
    case CellPrecision::Small: {
      const double ref = cell.value.to_double();
      return std::abs(computed.to_double() - ref) <= 0.05 * ref;
    }
  }
  return false;
}

}  // namespace qdl
