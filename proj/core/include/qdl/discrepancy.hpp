#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "qdl/point_set.hpp"
#include "qdl/subset.hpp"
#include "qdl/weights.hpp"

namespace qdl {

/// Grid-evaluation budget shared by the exact oracles.
inline constexpr double kGridBudget = 1e9;

/// Coordinates closer than this are merged when building critical grids.
inline constexpr double kGridTolerance = 1e-15;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The anchored box [0, upper), or [0, upper] when `closed` is set. Closed
/// boxes arise as witnesses: they are limits of [0, upper + eps).
struct AnchoredBox {
  std::vector<double> upper;
  bool closed = false;

  double volume() const;
};

/// A general axis-parallel box. Open witnesses stand for the limit of
/// [lower + eps, upper); closed ones for [lower, upper + eps).
struct CornerBox {
  std::vector<double> lower;
  std::vector<double> upper;
  bool closed = false;

  double volume() const;
};

using WitnessBox = std::variant<AnchoredBox, CornerBox>;

/// Value plus an attaining box. For weighted variants the box lives in the
/// coordinates of witness_subset (dimension |u|).
struct DiscrepancyResult {
  double value = 0.0;
  WitnessBox witness_box;
  std::optional<Subset> witness_subset;
};

/// One term gamma_u * D(P(u)) of a weighted discrepancy.
struct SubsetContribution {
  Subset subset;
  double weight;
  DiscrepancyResult discrepancy;
  double weighted() const { return weight * discrepancy.value; }
};

using SubsetWeightFn = std::function<double(const Subset&)>;

/// (#points in the box)/N - volume. Open boxes count x_j < upper_j, closed
/// ones x_j <= upper_j. Throws std::invalid_argument on dimension mismatch.
double local_discrepancy(const PointSet& p, const AnchoredBox& box);

/// Signed (#points)/N - volume for a CornerBox (open: lower < x < upper,
/// closed: lower <= x <= upper).
double box_discrepancy(const PointSet& p, const CornerBox& box);

/// Number of critical-grid nodes the star oracle would visit.
double star_grid_size(const PointSet& p);

/// Exact star discrepancy over the critical grid prod_j ({x_ij} u {1}).
/// Throws BudgetExceeded above kGridBudget nodes.
DiscrepancyResult star_discrepancy_exact(const PointSet& p);

/// Number of corner pairs the unanchored oracle would visit.
double unanchored_grid_size(const PointSet& p);

/// Exact unanchored (extreme) discrepancy over critical corner pairs.
/// Throws BudgetExceeded above kGridBudget pairs.
DiscrepancyResult unanchored_discrepancy_exact(const PointSet& p);

/// gamma_u * D*(P(u)) for every non-empty u, in mask order.
std::vector<SubsetContribution> star_contributions(const PointSet& p, const SubsetWeightFn& weight);
std::vector<SubsetContribution> unanchored_contributions(const PointSet& p, const SubsetWeightFn& weight);

/// max_u gamma_u D*(P(u)); ties go to the smallest |u|, then lexicographic u.
DiscrepancyResult weighted_star_discrepancy_exact(const PointSet& p, const WeightFamily& w);
DiscrepancyResult weighted_star_discrepancy_exact(const PointSet& p, const SubsetWeightFn& weight);

/// max_u gamma_u D(P(u)) with the unanchored oracle per subset.
DiscrepancyResult weighted_unanchored_discrepancy_exact(const PointSet& p, const WeightFamily& w);
DiscrepancyResult weighted_unanchored_discrepancy_exact(const PointSet& p, const SubsetWeightFn& weight);

/// Picks the maximal contribution under the tie-break above.
DiscrepancyResult select_weighted_max(const std::vector<SubsetContribution>& contributions);

SubsetWeightFn product_weight_fn(const WeightFamily& w);

}  // namespace qdl
