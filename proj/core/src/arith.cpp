#include "dioph/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "dioph/error.hpp"
#include "dioph/parallel.hpp"

namespace dioph {
namespace {

std::vector<std::uint32_t> base_primes(std::int64_t bound) {
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace

ArithTable ArithTable::build(std::int64_t limit, const ArithOptions& options) {
  if (limit < 2) throw RangeError("ArithTable limit must be at least 2");
  if (limit > options.max_entries || limit >= (std::int64_t{1} << 32)) {
    throw ResourceError("ArithTable limit " + std::to_string(limit) +
                        " exceeds the configured cap of " +
                        std::to_string(options.max_entries) + " entries");
  }
  ArithTable t;
  t.limit_ = limit;
  t.spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  t.prime_bits_.assign(static_cast<std::size_t>(limit / 64) + 1, 0);

  const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  const std::vector<std::uint32_t> primes = base_primes(root);

  const std::int64_t block = (std::max<std::int64_t>(options.block_size, 64) + 63) / 64 * 64;
  const std::vector<long long> bounds = block_bounds(0, limit + 1, block);
  parallel_for_chunks(bounds.size() - 1, [&](std::size_t b) {
    const std::int64_t lo = bounds[b];
    const std::int64_t hi = bounds[b + 1];
    std::uint32_t* spf = t.spf_.data();
    for (std::uint32_t p : primes) {
      const std::int64_t pp = std::int64_t{p} * p;
      if (pp >= hi) break;
      std::int64_t start = std::max(pp, (lo + p - 1) / p * p);
      for (std::int64_t m = start; m < hi; m += p) {
        if (spf[m] == 0) spf[m] = p;
      }
    }
    for (std::int64_t n = std::max<std::int64_t>(lo, 2); n < hi; ++n) {
      if (spf[n] == 0) {
        spf[n] = static_cast<std::uint32_t>(n);
        t.prime_bits_[static_cast<std::size_t>(n) >> 6] |= std::uint64_t{1} << (n & 63);
      }
    }
  });
  return t;
}

void ArithTable::check_upper(std::int64_t n) const {
  if (n > limit_) {
    throw RangeError("argument " + std::to_string(n) + " exceeds table limit " +
                     std::to_string(limit_));
  }
}

void ArithTable::check_range(std::int64_t n, std::int64_t lowest) const {
  check_upper(n);
  if (n < lowest) {
    throw RangeError("argument " + std::to_string(n) + " below " +
                     std::to_string(lowest));
  }
}

std::uint32_t ArithTable::smallest_factor(std::int64_t n) const {
  check_range(n, 2);
  return spf_[static_cast<std::size_t>(n)];
}

std::int64_t ArithTable::prime_power_base(std::int64_t n) const {
  check_range(n, 1);
  if (n == 1) return 0;
  const std::int64_t p = spf_[static_cast<std::size_t>(n)];
  std::int64_t m = n;
  while (m % p == 0) m /= p;
  return m == 1 ? p : 0;
}

double ArithTable::von_mangoldt(std::int64_t n) const {
  const std::int64_t p = prime_power_base(n);
  return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

std::vector<std::pair<std::int64_t, int>> ArithTable::factorize(std::int64_t n) const {
  check_range(n, 1);
  std::vector<std::pair<std::int64_t, int>> out;
  while (n > 1) {
    const std::int64_t p = spf_[static_cast<std::size_t>(n)];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

int ArithTable::moebius(std::int64_t n) const {
  int sign = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

int ArithTable::divisor_count(std::int64_t n) const {
  int count = 1;
  for (const auto& [p, e] : factorize(n)) count *= e + 1;
  return count;
}

std::vector<std::int64_t> ArithTable::divisors(std::int64_t n) const {
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> ArithTable::primes_between(std::int64_t lo,
                                                     std::int64_t hi) const {
  if (lo < 1 || lo > hi) {
    throw RangeError("primes_between requires 1 <= lo <= hi");
  }
  check_upper(hi);
  std::vector<std::int64_t> out;
  for (std::int64_t n = lo; n <= hi;) {
    const std::uint64_t word = prime_bits_[static_cast<std::size_t>(n) >> 6] >> (n & 63);
    if (word == 0) {
      n = (n | 63) + 1;
      continue;
    }
    n += std::countr_zero(word);
    if (n > hi) break;
    out.push_back(n);
    ++n;
  }
  return out;
}

std::int64_t ArithTable::prime_count(std::int64_t lo, std::int64_t hi) const {
  if (lo > hi) return 0;
  lo = std::max<std::int64_t>(lo, 1);
  check_upper(hi);
  std::int64_t count = 0;
  for (std::int64_t n = lo; n <= hi;) {
    const std::int64_t word_end = std::min(hi, n | 63);
    std::uint64_t word = prime_bits_[static_cast<std::size_t>(n) >> 6] >> (n & 63);
    const int width = static_cast<int>(word_end - n + 1);
    if (width < 64) word &= (std::uint64_t{1} << width) - 1;
    count += std::popcount(word);
    n = word_end + 1;
  }
  return count;
}

}  // namespace dioph
