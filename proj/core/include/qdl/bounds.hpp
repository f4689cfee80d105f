#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qdl/primes.hpp"
#include "qdl/subset.hpp"
#include "qdl/weights.hpp"

namespace qdl {

enum class BoundKind {
  HaltonH60,
  NiederreiterClassic,
  SixJLinear,
  NiederreiterT16,
  XingNiederreiter,
  HoferNiederreiter,
  Sobol,
};

/// A per-projection star-discrepancy bound D*_N(S(u)) <= f(u, N).
///
/// The Halton models read b_j from the prime bases. The digital-sequence
/// models carry their own base b (a prime power), genus g and the constant
/// C > 1 that the literature leaves unspecified.
struct BoundModel {
  BoundKind kind = BoundKind::HaltonH60;
  std::uint64_t base = 0;
  double genus = 0.0;
  std::optional<double> constant;

  static BoundModel halton_h60() { return {BoundKind::HaltonH60, 0, 0.0, std::nullopt}; }
  static BoundModel niederreiter_classic() { return {BoundKind::NiederreiterClassic, 0, 0.0, std::nullopt}; }
  static BoundModel six_j_linear() { return {BoundKind::SixJLinear, 0, 0.0, std::nullopt}; }
  static BoundModel niederreiter_t16(std::uint64_t b) { return {BoundKind::NiederreiterT16, b, 0.0, std::nullopt}; }
  static BoundModel xing_niederreiter(std::uint64_t b, double g, std::optional<double> c) {
    return {BoundKind::XingNiederreiter, b, g, c};
  }
  static BoundModel hofer_niederreiter(std::uint64_t b, double g, std::optional<double> c) {
    return {BoundKind::HoferNiederreiter, b, g, c};
  }
  static BoundModel sobol(std::optional<double> c) { return {BoundKind::Sobol, 2, 0.0, c}; }

  /// Throws std::invalid_argument on a non-prime-power base, negative genus,
  /// C <= 1, or a missing C for the models that need it.
  void validate() const;
};

std::string to_string(BoundKind kind);
/// Accepts the to_string names, case-insensitively, with or without '-'/'_'.
BoundKind parse_bound_kind(std::string_view name);

/// log of the bound; see projection_bound.
double projection_bound_log(const BoundModel& model, const Subset& u, double n, const PrimeBases& bases);

/// Evaluates the model's bound for the projection onto u at N points (natural
/// log except where a formula says log2). N is real; throws
/// std::invalid_argument for N < 2 and std::out_of_range if u exceeds the
/// prime bases for the Halton models.
double projection_bound(const BoundModel& model, const Subset& u, double n, const PrimeBases& bases);

struct Domination {
  double lhs;  ///< (3 b_j - 2) / log b_j
  double rhs;  ///< 6 j
};

/// ((3 b_j - 2)/log b_j, 6j) for the j-th prime b_j.
Domination six_j_domination(std::size_t j);
Domination six_j_domination(std::size_t j, const PrimeBases& bases);

/// (1/N) max_u prod_{j in u} 6 j gamma_j log N, via the closed form (product
/// of all factors > 1, else the largest single factor). Any d.
double weighted_bound_max(const WeightFamily& w, std::size_t d, double n);

/// (1/N)(-1 + prod_{j=1}^{d} (1 + 6 j gamma_j log N)), in log domain.
double weighted_bound_product(const WeightFamily& w, std::size_t d, double n);

/// max_u prod_{j in u}(j gamma_j) min{prod_{j in u} 1/j, (6 log N)^{|u|}/N},
/// by enumeration (d <= 25).
double min_improved_weighted_bound(const WeightFamily& w, std::size_t d, double n);

/// The proof's constant 6, or 12 for the unanchored discrepancy.
enum class DiscrepancyVariant { Anchored, Unanchored };

double variant_constant(DiscrepancyVariant v);

/// The real l solving (e/l)^l = (c log N)^l / N, i.e.
/// log N / W((c/e)(log N)^2), with c = 6 (anchored) or 12. Needs N > 1.
double ell_star(double n, DiscrepancyVariant v = DiscrepancyVariant::Anchored);

/// log[(e/l)^l] - log[(c log N)^l / N]; zero at l = ell_star(N).
double ell_star_log_residual(double n, double ell, DiscrepancyVariant v = DiscrepancyVariant::Anchored);

/// delta*(N) = (log log N + log c) / (2 log log N + log c - 1
///             - log(2 log log N + log c - 1)), c = 6 or 12.
/// Throws std::invalid_argument for N < 10.
double delta_star(double n, DiscrepancyVariant v = DiscrepancyVariant::Anchored);

/// delta* as a function of log N (for N beyond double range).
double delta_star_from_log(double log_n, DiscrepancyVariant v = DiscrepancyVariant::Anchored);

/// The N where delta*(N) = 1, by bisection on log N.
double delta_star_unit_crossing(DiscrepancyVariant v = DiscrepancyVariant::Anchored);

/// N^{-(1 - delta*(N))} max_u prod_{j in u}(j gamma_j). Needs N >= 10.
double halton_weighted_bound_final(const WeightFamily& w, std::size_t d, double n,
                                   DiscrepancyVariant v = DiscrepancyVariant::Anchored);

}  // namespace qdl
