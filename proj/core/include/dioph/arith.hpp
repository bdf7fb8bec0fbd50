#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace dioph {

struct ArithOptions {
  // Largest admissible table limit (one 32-bit entry per integer).
  std::int64_t max_entries = std::int64_t{1} << 28;
  // Segment length of the sieve; rounded up to a multiple of 64.
  std::int64_t block_size = std::int64_t{1} << 20;
};

// Smallest-prime-factor table for 2..limit with a packed primality bitmap.
// Immutable after construction and safe to share between threads.
class ArithTable {
 public:
  // Segmented sieve; segments are filled in parallel. Throws RangeError
  // for limit < 2 and ResourceError when limit exceeds options.max_entries.
  static ArithTable build(std::int64_t limit, const ArithOptions& options = {});

  std::int64_t limit() const { return limit_; }

  // Smallest prime factor of n, 2 <= n <= limit.
  std::uint32_t smallest_factor(std::int64_t n) const;

  // False for n < 2; RangeError above the limit.
  bool is_prime(std::int64_t n) const {
    check_upper(n);
    if (n < 2) return false;
    return (prime_bits_[static_cast<std::size_t>(n) >> 6] >> (n & 63)) & 1u;
  }

  // Lambda(n): log p when n = p^m, else 0 (natural log; Lambda(1) = 0).
  double von_mangoldt(std::int64_t n) const;
  // The prime p when n = p^m, else 0 (so Lambda(n) = log of the result).
  std::int64_t prime_power_base(std::int64_t n) const;
  int moebius(std::int64_t n) const;
  int divisor_count(std::int64_t n) const;

  // Prime factorization as ascending (prime, exponent) pairs; empty for 1.
  std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) const;
  // All positive divisors of n in ascending order.
  std::vector<std::int64_t> divisors(std::int64_t n) const;

  // Primes p with lo <= p <= hi, ascending. Requires 1 <= lo <= hi <= limit.
  std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi) const;
  std::int64_t prime_count(std::int64_t lo, std::int64_t hi) const;

  std::span<const std::uint32_t> smallest_factors() const { return spf_; }

 private:
  void check_upper(std::int64_t n) const;
  void check_range(std::int64_t n, std::int64_t lowest) const;

  std::int64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;          // index n, entries 0 and 1 unused
  std::vector<std::uint64_t> prime_bits_;   // bit n set iff n is prime
};

inline ArithTable build_arith_table(std::int64_t limit,
                                    const ArithOptions& options = {}) {
  return ArithTable::build(limit, options);
}

}  // namespace dioph
