#include "qdl/halton.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdl/parallel.hpp"

namespace qdl {

namespace {

constexpr std::uint64_t kExactLimit = std::uint64_t{1} << 53;

std::uint64_t checked_power(std::uint64_t base, unsigned exponent) {
  std::uint64_t p = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (p > UINT64_MAX / base) throw std::overflow_error("base^level overflows 64 bits");
    p *= base;
  }
  return p;
}

}  // namespace

double radical_inverse(std::uint64_t base, std::uint64_t n) {
  if (base < 2) throw std::invalid_argument("radical_inverse: base must be >= 2");
  // Reverse digits into an integer while b^m stays exactly representable,
  // then divide once.
  std::uint64_t reversed = 0;
  std::uint64_t scale = 1;
  while (n != 0 && scale <= kExactLimit / base) {
    reversed = reversed * base + n % base;
    scale *= base;
    n /= base;
  }
  double x = static_cast<double>(reversed) / static_cast<double>(scale);
  // Remaining digits are below the double resolution of x in practice.
  double inv = 1.0 / static_cast<double>(scale);
  while (n != 0) {
    inv /= static_cast<double>(base);
    x += static_cast<double>(n % base) * inv;
    n /= base;
  }
  return x < 1.0 ? x : std::nextafter(1.0, 0.0);
}

PointSet halton_points(const PrimeBases& bases, std::size_t count, std::uint64_t start) {
  if (count == 0) throw std::invalid_argument("halton_points: N must be >= 1");
  const std::size_t d = bases.dimension();
  std::vector<double> coords(count * d);
  parallel_chunks(count, 4096, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < d; ++j) coords[i * d + j] = radical_inverse(bases.bases()[j], start + i);
    }
  });
  return PointSet(d, std::move(coords));
}

std::vector<double> halton_block_extend(std::span<const double> current, std::uint64_t base, unsigned level) {
  if (base < 2) throw std::invalid_argument("halton_block_extend: base must be >= 2");
  const std::uint64_t block = checked_power(base, level);
  if (current.size() != block) {
    throw std::invalid_argument("halton_block_extend: expected " + std::to_string(block) + " points, got " +
                                std::to_string(current.size()));
  }
  const double denom = static_cast<double>(checked_power(base, level + 1));
  std::vector<double> out;
  out.reserve(block * base);
  for (std::uint64_t r = 0; r < base; ++r) {
    const double shift = static_cast<double>(r) / denom;
    for (double x : current) out.push_back(x + shift);
  }
  return out;
}

std::vector<double> van_der_corput_incremental(std::uint64_t base, std::size_t count) {
  if (count == 0) throw std::invalid_argument("van_der_corput_incremental: N must be >= 1");
  if (base < 2) throw std::invalid_argument("van_der_corput_incremental: base must be >= 2");
  // Block extension on integer numerators over b^level: the copy for shift r
  // maps m / b^k to (m b + r) / b^(k+1). One final division keeps every value
  // correctly rounded; real-valued blocks are the fallback past 2^53.
  std::vector<std::uint64_t> numer{0};
  std::uint64_t denom = 1;
  while (numer.size() < count && denom <= kExactLimit / base) {
    std::vector<std::uint64_t> next;
    next.reserve(numer.size() * base);
    for (std::uint64_t r = 0; r < base; ++r) {
      for (auto m : numer) next.push_back(m * base + r);
    }
    numer = std::move(next);
    denom *= base;
  }
  std::vector<double> points(numer.size());
  for (std::size_t i = 0; i < numer.size(); ++i) {
    points[i] = static_cast<double>(numer[i]) / static_cast<double>(denom);
  }
  unsigned level = 0;
  for (std::uint64_t p = 1; p < denom; p *= base) ++level;
  while (points.size() < count) points = halton_block_extend(points, base, level++);
  points.resize(count);
  return points;
}

PointSet halton_points_incremental(const PrimeBases& bases, std::size_t count, std::uint64_t start) {
  if (count == 0) throw std::invalid_argument("halton_points_incremental: N must be >= 1");
  const std::size_t d = bases.dimension();
  std::vector<std::vector<double>> columns(d);
  parallel_chunks(d, 1, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      auto column = van_der_corput_incremental(bases.bases()[j], start + count);
      columns[j].assign(column.begin() + static_cast<std::ptrdiff_t>(start), column.end());
    }
  });
  return PointSet::from_columns(columns);
}

}  // namespace qdl
