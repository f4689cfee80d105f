#include "qdl/weights.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace qdl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double parse_real(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("weights: bad number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

WeightFamily::WeightFamily(Kind kind) : kind_(std::move(kind)) {
  std::visit(Overloaded{
                 [](const PowerLaw& p) {
                   if (!(p.alpha > 0.0)) throw std::invalid_argument("PowerLaw: alpha must be > 0");
                 },
                 [](const Reciprocal&) {},
                 [](const LogSqrt& l) {
                   if (!(l.c_hat > 0.0)) throw std::invalid_argument("LogSqrt: c_hat must be > 0");
                 },
                 [](const Explicit& e) {
                   if (e.values.empty()) throw std::invalid_argument("Explicit: empty weight list");
                   for (std::size_t i = 0; i < e.values.size(); ++i) {
                     const double g = e.values[i];
                     if (!(g > 0.0 && g <= 1.0)) {
                       throw std::invalid_argument(
                           fmt::format("Explicit: gamma_{} = {} is outside (0, 1]", i + 1, g));
                     }
                     if (i > 0 && g > e.values[i - 1]) {
                       throw std::invalid_argument(
                           fmt::format("Explicit: weights must be non-increasing (gamma_{} > gamma_{})",
                                       i + 1, i));
                     }
                   }
                 },
             },
             kind_);
}

WeightFamily WeightFamily::unit(std::size_t d) {
  if (d == 0) throw std::invalid_argument("unit weights: d must be >= 1");
  return explicit_list(std::vector<double>(d, 1.0));
}

WeightFamily WeightFamily::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto name = spec.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (name == "reciprocal") return reciprocal();
  if (name == "power") return power_law(parse_real(arg));
  if (name == "logsqrt") return log_sqrt(parse_real(arg));
  if (name == "unit") return unit(static_cast<std::size_t>(parse_real(arg)));
  if (name == "explicit") {
    std::vector<double> values;
    auto rest = arg;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      values.push_back(parse_real(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return explicit_list(std::move(values));
  }
  throw std::invalid_argument("unknown weight family '" + std::string(spec) +
                              "' (expected power:<a>, reciprocal, logsqrt:<c>, explicit:<list>, unit:<d>)");
}

std::optional<std::size_t> WeightFamily::length() const {
  if (const auto* e = std::get_if<Explicit>(&kind_)) return e->values.size();
  return std::nullopt;
}

std::string WeightFamily::describe() const {
  return std::visit(Overloaded{
                        [](const PowerLaw& p) { return fmt::format("power:{}", p.alpha); },
                        [](const Reciprocal&) { return std::string("reciprocal"); },
                        [](const LogSqrt& l) { return fmt::format("logsqrt:{}", l.c_hat); },
                        [](const Explicit& e) { return fmt::format("explicit:{}", fmt::join(e.values, ",")); },
                    },
                    kind_);
}

double WeightFamily::at(std::size_t j) const {
  if (j == 0) throw std::out_of_range("weight index is 1-based");
  const double x = static_cast<double>(j);
  return std::visit(Overloaded{
                        [&](const PowerLaw& p) { return std::pow(x, -(1.0 + p.alpha)); },
                        [&](const Reciprocal&) { return 1.0 / x; },
                        [&](const LogSqrt& l) { return std::min(1.0, l.c_hat / std::sqrt(std::log(x + 1.0))); },
                        [&](const Explicit& e) {
                          if (j > e.values.size()) {
                            throw std::out_of_range(fmt::format(
                                "explicit weights define {} entries, gamma_{} requested", e.values.size(), j));
                          }
                          return e.values[j - 1];
                        },
                    },
                    kind_);
}

double WeightFamily::log_at(std::size_t j) const {
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) {
    if (j == 0) throw std::out_of_range("weight index is 1-based");
    return -(1.0 + p->alpha) * std::log(static_cast<double>(j));
  }
  return std::log(at(j));
}

double weight_at(const WeightFamily& w, std::size_t j) { return w.at(j); }

double subset_weight(const WeightFamily& w, const Subset& u) {
  double log_sum = 0.0;
  for (auto j : u.indices()) log_sum += w.log_at(j);
  return std::exp(log_sum);
}

namespace {

// a_j = j gamma_j, exact for the reciprocal family.
double jgamma(const WeightFamily& w, std::size_t j) {
  if (std::holds_alternative<Reciprocal>(w.kind())) return 1.0;
  if (const auto* p = std::get_if<PowerLaw>(&w.kind())) return std::pow(static_cast<double>(j), -p->alpha);
  return static_cast<double>(j) * w.at(j);
}

}  // namespace

Subset argmax_subset_jgamma(const WeightFamily& w, std::size_t d) {
  if (d == 0) throw std::invalid_argument("max_subset_jgamma: d must be >= 1");
  std::vector<std::size_t> above;
  std::size_t best = 1;
  double best_a = jgamma(w, 1);
  for (std::size_t j = 1; j <= d; ++j) {
    const double a = jgamma(w, j);
    if (a > 1.0) above.push_back(j);
    if (a > best_a) {
      best_a = a;
      best = j;
    }
  }
  if (!above.empty()) return Subset(std::move(above));
  return Subset({best});
}

double max_subset_jgamma(const WeightFamily& w, std::size_t d) {
  const Subset u = argmax_subset_jgamma(w, d);
  double log_prod = 0.0;
  for (auto j : u.indices()) log_prod += std::log(jgamma(w, j));
  return std::exp(log_prod);
}

double partial_sum_jgamma(const WeightFamily& w, std::size_t d) {
  if (d == 0) throw std::invalid_argument("partial_sum_jgamma: d must be >= 1");
  double sum = 0.0;
  for (std::size_t j = 1; j <= d; ++j) sum += jgamma(w, j);
  return sum;
}

}  // namespace qdl
