#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qdl/subset.hpp"

namespace qdl {

/// gamma_j = j^-(1 + alpha), alpha > 0.
struct PowerLaw {
  double alpha;
};

/// gamma_j = 1/j.
struct Reciprocal {};

/// gamma_j = min(1, c_hat / sqrt(log(j + 1))), c_hat > 0.
struct LogSqrt {
  double c_hat;
};

/// Explicit non-increasing list gamma_1, ..., gamma_n in (0, 1].
struct Explicit {
  std::vector<double> values;
};

/// Product-weight generator: gamma_u = prod_{j in u} gamma_j.
class WeightFamily {
 public:
  using Kind = std::variant<PowerLaw, Reciprocal, LogSqrt, Explicit>;

  /// Validates parameters; throws std::invalid_argument on alpha <= 0,
  /// c_hat <= 0, or an Explicit list that is empty, leaves (0, 1], or
  /// increases.
  explicit WeightFamily(Kind kind);

  static WeightFamily power_law(double alpha) { return WeightFamily(PowerLaw{alpha}); }
  static WeightFamily reciprocal() { return WeightFamily(Reciprocal{}); }
  static WeightFamily log_sqrt(double c_hat) { return WeightFamily(LogSqrt{c_hat}); }
  static WeightFamily explicit_list(std::vector<double> values) {
    return WeightFamily(Explicit{std::move(values)});
  }
  /// gamma_j = 1 for j <= d (the unweighted case).
  static WeightFamily unit(std::size_t d);

  /// "power:<alpha>", "reciprocal", "logsqrt:<c>", "explicit:<g1>,<g2>,...",
  /// "unit:<d>".
  static WeightFamily parse(std::string_view spec);

  const Kind& kind() const { return kind_; }
  /// Number of defined weights for Explicit, nullopt otherwise.
  std::optional<std::size_t> length() const;
  std::string describe() const;

  /// gamma_j; throws std::out_of_range for j == 0 or j past an Explicit list.
  double at(std::size_t j) const;
  /// log(gamma_j).
  double log_at(std::size_t j) const;

 private:
  Kind kind_;
};

double weight_at(const WeightFamily& w, std::size_t j);

/// prod_{j in u} gamma_j, accumulated in log domain.
double subset_weight(const WeightFamily& w, const Subset& u);

/// max over non-empty u in [d] of prod_{j in u} (j gamma_j), by the closed
/// form: the product of all a_j = j gamma_j > 1 if any exceed 1, otherwise
/// max_j a_j.
double max_subset_jgamma(const WeightFamily& w, std::size_t d);

/// The maximizing subset of max_subset_jgamma.
Subset argmax_subset_jgamma(const WeightFamily& w, std::size_t d);

/// sum_{j=1}^{d} j gamma_j.
double partial_sum_jgamma(const WeightFamily& w, std::size_t d);

}  // namespace qdl
