#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qdl {

/// The first d primes b_1 = 2 < b_2 < ... < b_d, used as Halton bases.
class PrimeBases {
 public:
  explicit PrimeBases(std::vector<std::uint64_t> bases);

  std::size_t dimension() const { return bases_.size(); }
  /// 1-based accessor matching the b_j notation.
  std::uint64_t base(std::size_t j) const;
  const std::vector<std::uint64_t>& bases() const { return bases_; }

 private:
  std::vector<std::uint64_t> bases_;
};

/// All primes <= limit, ascending (segmented sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Upper bound on the d-th prime: d(log d + log log d) for d >= 6.
std::uint64_t nth_prime_upper_bound(std::size_t d);

/// Throws std::invalid_argument when d == 0.
PrimeBases first_primes(std::size_t d);

bool is_prime_power(std::uint64_t q);

}  // namespace qdl
