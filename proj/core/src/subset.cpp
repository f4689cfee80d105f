#include "qdl/subset.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace qdl {

Subset::Subset(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw std::invalid_argument("Subset: must be non-empty");
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (indices_.front() == 0) throw std::invalid_argument("Subset: indices are 1-based");
}

Subset Subset::full(std::size_t d) {
  if (d == 0) throw std::invalid_argument("Subset: dimension must be >= 1");
  std::vector<std::size_t> idx(d);
  for (std::size_t j = 0; j < d; ++j) idx[j] = j + 1;
  return Subset(std::move(idx));
}

Subset Subset::from_mask(std::uint64_t mask) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; mask != 0; ++j, mask >>= 1) {
    if (mask & 1u) idx.push_back(j + 1);
  }
  return Subset(std::move(idx));
}

Subset Subset::parse(std::string_view text) {
  if (!text.empty() && text.front() == '{') text.remove_prefix(1);
  if (!text.empty() && text.back() == '}') text.remove_suffix(1);
  std::vector<std::size_t> idx;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto token = text.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw std::invalid_argument("Subset: bad index '" + std::string(token) + "'");
    }
    idx.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Subset(std::move(idx));
}

std::uint64_t Subset::mask() const {
  if (max_index() > 64) throw std::out_of_range("Subset: index too large for a mask");
  std::uint64_t m = 0;
  for (auto j : indices_) m |= std::uint64_t{1} << (j - 1);
  return m;
}

void Subset::check_within(std::size_t d) const {
  if (max_index() > d) {
    throw std::out_of_range("Subset " + to_string() + " exceeds dimension " + std::to_string(d));
  }
}

std::string Subset::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(indices_[i]);
  }
  return s + "}";
}

bool subset_precedes(const Subset& a, const Subset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.indices() < b.indices();
}

void check_enumerable(std::size_t d) {
  if (d > kMaxEnumerationDimension) {
    throw std::invalid_argument("subset enumeration refused: d = " + std::to_string(d) +
                                " exceeds the cap of " + std::to_string(kMaxEnumerationDimension));
  }
}

}  // namespace qdl
