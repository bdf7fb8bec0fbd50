#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/fixed_real.hpp"

namespace dioph {

struct VaughanParams {
  double u = 1.0;
  double v = 1.0;
  double x = 1.0;

  // Throws ConfigError unless u >= 1, v >= 1 and uv <= x.
  void validate() const;
};

// b(l) = sum_{d | l, d <= v} mu(d).
int b_coeff(const ArithTable& table, std::int64_t l, double v);

// b(1..limit) for a fixed v, by sieving the squarefree d <= v.
std::vector<int> b_coeff_table(const ArithTable& table, std::int64_t limit, double v);

struct VaughanTerms {
  double a1 = 0.0;  // Lambda(n) [n <= u]
  double a2 = 0.0;  // -sum_{mdr = n, m <= u, d <= v} Lambda(m) mu(d)
  double a3 = 0.0;  // sum_{hd = n, d <= v} mu(d) log h
  double a4 = 0.0;  // -sum_{mk = n, m > u, k > v} Lambda(m) b(k)

  double sum() const { return a1 + a2 + a3 + a4; }
};

// The four pieces of Vaughan's identity at n; they add up to Lambda(n).
VaughanTerms vaughan_decompose(const ArithTable& table, std::int64_t n,
                               const VaughanParams& params);

using ArithmeticFunction = std::function<std::complex<double>(std::int64_t)>;

struct TypeSums {
  double T1 = 0.0;  // sum_{l <= uv} max_w |sum_{w <= m <= x/l} f(ml)|
  double T2 = 0.0;  // |sum_{u < m <= x/v} sum_{v < l <= x/m} Lambda(m) b(l) f(ml)|
  std::complex<double> lhs;  // sum_{u < n <= x} f(n) Lambda(n)
  // |lhs| / ((log 2x) T1 + T2), or 0 when the denominator vanishes.
  double fitted_constant = 0.0;
};

// Requires x <= table limit and |f| <= 1.
TypeSums type_sums(const ArithTable& table, const ArithmeticFunction& f,
                   const VaughanParams& params);

struct VaughanPieces {
  std::complex<double> S1, S2, S3, S4;
  std::complex<double> total() const { return S1 + S2 + S3 + S4; }
};

// sum_{n <= x} Lambda(n) f(n) rebuilt from the bilinear forms of the four
// identity pieces (each evaluated over its own factorization, not per n).
VaughanPieces vaughan_reassemble(const ArithTable& table, const ArithmeticFunction& f,
                                 const VaughanParams& params);

// Prime powers in [n_lo, n_hi] with their Lambda weights.
struct PrimePowers {
  std::vector<std::int64_t> n;
  std::vector<double> weight;
};
PrimePowers prime_powers_between(const ArithTable& table, std::int64_t n_lo,
                                 std::int64_t n_hi);

// sum_{n_lo <= n <= n_hi} Lambda(n) e(n theta) with exact phases.
std::complex<double> lambda_exp_sum(const ArithTable& table, std::int64_t n_lo,
                                    std::int64_t n_hi, const FixedReal& theta);
std::complex<double> lambda_exp_sum(const PrimePowers& terms, Phase theta);

}  // namespace dioph
