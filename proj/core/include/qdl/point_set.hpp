#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qdl/subset.hpp"

namespace qdl {

/// N points in [0,1)^d, row-major. Immutable after construction.
class PointSet {
 public:
  /// Throws std::invalid_argument unless d >= 1, coords.size() is a positive
  /// multiple of d, and every coordinate lies in [0, 1).
  PointSet(std::size_t dimension, std::vector<double> coords);

  /// Builds from columns (column j holds coordinate j+1 of every point).
  static PointSet from_columns(const std::vector<std::vector<double>>& columns);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return coords_.size() / dimension_; }

  /// Point i (0-based), coordinate j (0-based).
  double operator()(std::size_t i, std::size_t j) const { return coords_[i * dimension_ + j]; }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dimension_, dimension_);
  }
  std::span<const double> coords() const { return coords_; }
  /// Copy of coordinate j (0-based) across all points.
  std::vector<double> column(std::size_t j) const;

  bool operator==(const PointSet&) const = default;

 private:
  std::size_t dimension_;
  std::vector<double> coords_;
};

/// |u|-dimensional projection onto the (1-based) indices in u, keeping point
/// order. Throws std::out_of_range if u exceeds the dimension.
PointSet project(const PointSet& p, const Subset& u);

}  // namespace qdl
