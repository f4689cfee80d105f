#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qdl {

/// Subset enumeration (2^d - 1 non-empty subsets) is refused above this.
inline constexpr std::size_t kMaxEnumerationDimension = 25;

/// A non-empty set of 1-based coordinate indices, stored ascending.
class Subset {
 public:
  /// Sorts and deduplicates; throws std::invalid_argument if empty or any
  /// index is 0.
  explicit Subset(std::vector<std::size_t> indices);

  static Subset full(std::size_t d);
  /// Bit j-1 of mask selects index j.
  static Subset from_mask(std::uint64_t mask);
  /// "1,3" or "{1,3}".
  static Subset parse(std::string_view text);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  std::size_t min_index() const { return indices_.front(); }
  std::size_t max_index() const { return indices_.back(); }
  std::uint64_t mask() const;

  /// Throws std::out_of_range if any index exceeds d.
  void check_within(std::size_t d) const;

  /// "{1,3}".
  std::string to_string() const;

  bool operator==(const Subset&) const = default;

 private:
  std::vector<std::size_t> indices_;
};

/// Witness tie-break order: smaller cardinality first, then lexicographic.
bool subset_precedes(const Subset& a, const Subset& b);

/// Throws std::invalid_argument when d exceeds kMaxEnumerationDimension.
void check_enumerable(std::size_t d);

/// Masks 1 .. 2^d - 1 in increasing numeric order.
template <class Fn>
void for_each_subset_mask(std::size_t d, Fn&& fn) {
  check_enumerable(d);
  const std::uint64_t end = std::uint64_t{1} << d;
  for (std::uint64_t mask = 1; mask < end; ++mask) fn(mask);
}

}  // namespace qdl
