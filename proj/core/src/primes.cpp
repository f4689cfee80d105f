#include "qdl/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdl {

PrimeBases::PrimeBases(std::vector<std::uint64_t> bases) : bases_(std::move(bases)) {
  if (bases_.empty()) throw std::invalid_argument("PrimeBases: dimension must be >= 1");
}

std::uint64_t PrimeBases::base(std::size_t j) const {
  if (j < 1 || j > bases_.size()) throw std::out_of_range("PrimeBases: index out of range");
  return bases_[j - 1];
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> sieving;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    sieving.push_back(i);
    for (std::uint64_t k = i * i; k <= root; k += i) small[k] = 0;
  }

  constexpr std::uint64_t kSegment = 1 << 16;
  std::vector<char> segment(kSegment);
  std::vector<std::uint64_t> next(sieving.size());
  for (std::size_t i = 0; i < sieving.size(); ++i) next[i] = sieving[i] * sieving[i];

  for (std::uint64_t low = 2; low <= limit; low += kSegment) {
    const std::uint64_t high = std::min(low + kSegment - 1, limit);
    std::fill(segment.begin(), segment.end(), 1);
    for (std::size_t i = 0; i < sieving.size(); ++i) {
      const std::uint64_t p = sieving[i];
      if (p * p > high) break;
      std::uint64_t k = next[i];
      for (; k <= high; k += p) segment[k - low] = 0;
      next[i] = k;
    }
    for (std::uint64_t n = low; n <= high; ++n) {
      if (segment[n - low]) primes.push_back(n);
    }
  }
  return primes;
}

std::uint64_t nth_prime_upper_bound(std::size_t d) {
  if (d < 6) return 13;
  const double x = static_cast<double>(d);
  return static_cast<std::uint64_t>(std::ceil(x * (std::log(x) + std::log(std::log(x))))) + 1;
}

PrimeBases first_primes(std::size_t d) {
  if (d == 0) throw std::invalid_argument("first_primes: dimension must be >= 1");
  auto primes = primes_up_to(nth_prime_upper_bound(d));
  primes.resize(d);
  return PrimeBases(std::move(primes));
}

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    while (q % p == 0) q /= p;
    return q == 1;
  }
  return true;
}

}  // namespace qdl
