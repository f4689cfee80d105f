#include "qdl/point_set.hpp"

#include <stdexcept>
#include <string>

namespace qdl {

PointSet::PointSet(std::size_t dimension, std::vector<double> coords)
    : dimension_(dimension), coords_(std::move(coords)) {
  if (dimension_ == 0) throw std::invalid_argument("PointSet: dimension must be >= 1");
  if (coords_.empty() || coords_.size() % dimension_ != 0) {
    throw std::invalid_argument("PointSet: coordinate count must be a positive multiple of d");
  }
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (!(coords_[k] >= 0.0 && coords_[k] < 1.0)) {
      throw std::invalid_argument("PointSet: coordinate " + std::to_string(k % dimension_ + 1) + " of point " +
                                  std::to_string(k / dimension_) + " is outside [0,1)");
    }
  }
}

PointSet PointSet::from_columns(const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) throw std::invalid_argument("PointSet: no columns");
  const std::size_t d = columns.size();
  const std::size_t n = columns.front().size();
  std::vector<double> coords(n * d);
  for (std::size_t j = 0; j < d; ++j) {
    if (columns[j].size() != n) throw std::invalid_argument("PointSet: ragged columns");
    for (std::size_t i = 0; i < n; ++i) coords[i * d + j] = columns[j][i];
  }
  return PointSet(d, std::move(coords));
}

std::vector<double> PointSet::column(std::size_t j) const {
  if (j >= dimension_) throw std::out_of_range("PointSet: column index out of range");
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)(i, j);
  return out;
}

PointSet project(const PointSet& p, const Subset& u) {
  u.check_within(p.dimension());
  const auto& idx = u.indices();
  const std::size_t k = idx.size();
  std::vector<double> coords(p.size() * k);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) coords[i * k + c] = p(i, idx[c] - 1);
  }
  return PointSet(k, std::move(coords));
}

}  // namespace qdl
