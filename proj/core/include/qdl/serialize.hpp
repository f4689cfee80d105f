#pragma once

#include <iosfwd>
#include <string>

#include "qdl/discrepancy.hpp"
#include "qdl/point_set.hpp"
#include "qdl/primes.hpp"

namespace qdl {

/// Reals as text with 17 significant digits ("%.17g"), which round-trips.
std::string format_real(double x);

/// Header "x1,...,xd" then one point per row.
void write_csv(std::ostream& os, const PointSet& p);
std::string to_csv(const PointSet& p);

/// Inverse of write_csv. Throws std::invalid_argument on malformed input.
PointSet read_csv(std::istream& is);

/// {"d": .., "N": .., "bases": [..], "points": [[..], ..]}.
std::string to_json(const PointSet& p, const PrimeBases& bases, int indent = -1);

/// {"value": .., "witness_box": {..}, "witness_subset": [..] or null}.
std::string to_json(const DiscrepancyResult& r, int indent = -1);

}  // namespace qdl
