#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qdl/point_set.hpp"
#include "qdl/primes.hpp"

namespace qdl {

/// phi_b(n) = n_0/b + n_1/b^2 + ... for n = n_0 + n_1 b + ...
/// Throws std::invalid_argument for b < 2.
double radical_inverse(std::uint64_t base, std::uint64_t n);

/// Points x_start, ..., x_{start+count-1} of the Halton sequence, one
/// radical inverse per coordinate.
PointSet halton_points(const PrimeBases& bases, std::size_t count, std::uint64_t start = 0);

/// Given the first b^k van der Corput points in base b (in sequence order),
/// returns the first b^{k+1}: b stacked copies shifted by r / b^{k+1},
/// r = 0..b-1. Throws std::invalid_argument if current.size() != b^k.
std::vector<double> halton_block_extend(std::span<const double> current, std::uint64_t base, unsigned level);

/// First `count` van der Corput points in base b, built only from block
/// extensions (O(count) additions).
std::vector<double> van_der_corput_incremental(std::uint64_t base, std::size_t count);

/// Same points as halton_points, built column-wise by block extension.
PointSet halton_points_incremental(const PrimeBases& bases, std::size_t count, std::uint64_t start = 0);

}  // namespace qdl
