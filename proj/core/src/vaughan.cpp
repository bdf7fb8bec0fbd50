#include "dioph/vaughan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dioph/error.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

void VaughanParams::validate() const {
  if (!(u >= 1.0) || !(v >= 1.0)) throw ConfigError("Vaughan parameters need u >= 1 and v >= 1");
  if (!(u * v <= x)) throw ConfigError("Vaughan parameters need uv <= x");
}

namespace {

std::int64_t floor_of(double x) { return static_cast<std::int64_t>(std::floor(x)); }

void require_within(const ArithTable& table, std::int64_t n) {
  if (n < 1 || n > table.limit()) {
    throw RangeError("argument " + std::to_string(n) + " outside table range [1, " +
                     std::to_string(table.limit()) + "]");
  }
}

std::vector<std::complex<double>> cache_values(const ArithmeticFunction& f, std::int64_t x) {
  std::vector<std::complex<double>> values(static_cast<std::size_t>(x) + 1);
  for (std::int64_t n = 1; n <= x; ++n) values[n] = f(n);
  return values;
}

}  // namespace

int b_coeff(const ArithTable& table, std::int64_t l, double v) {
  require_within(table, l);
  int total = 0;
  for (std::int64_t d : table.divisors(l)) {
    if (static_cast<double>(d) <= v) total += table.moebius(d);
  }
  return total;
}

std::vector<int> b_coeff_table(const ArithTable& table, std::int64_t limit, double v) {
  require_within(table, std::max<std::int64_t>(limit, 1));
  std::vector<int> b(static_cast<std::size_t>(limit) + 1, 0);
  const std::int64_t dmax = std::min<std::int64_t>(floor_of(v), limit);
  for (std::int64_t d = 1; d <= dmax; ++d) {
    const int mu = table.moebius(d);
    if (mu == 0) continue;
    for (std::int64_t l = d; l <= limit; l += d) b[l] += mu;
  }
  return b;
}

VaughanTerms vaughan_decompose(const ArithTable& table, std::int64_t n,
                               const VaughanParams& params) {
  require_within(table, n);
  const double u = params.u;
  const double v = params.v;
  VaughanTerms t;
  const std::vector<std::int64_t> divs = table.divisors(n);
  if (static_cast<double>(n) <= u) t.a1 = table.von_mangoldt(n);
  for (std::int64_t e : divs) {
    // e = m d runs over divisors of n; r = n / e is free.
    for (std::int64_t m : table.divisors(e)) {
      const std::int64_t d = e / m;
      if (static_cast<double>(m) <= u && static_cast<double>(d) <= v) {
        t.a2 -= table.von_mangoldt(m) * table.moebius(d);
      }
    }
    if (static_cast<double>(e) <= v) {
      t.a3 += table.moebius(e) * std::log(static_cast<double>(n / e));
    }
    const std::int64_t k = n / e;
    if (static_cast<double>(e) > u && static_cast<double>(k) > v) {
      const double lam = table.von_mangoldt(e);
      if (lam != 0.0) t.a4 -= lam * b_coeff(table, k, v);
    }
  }
  return t;
}

TypeSums type_sums(const ArithTable& table, const ArithmeticFunction& f,
                   const VaughanParams& params) {
  params.validate();
  const std::int64_t x = floor_of(params.x);
  require_within(table, x);
  const auto values = cache_values(f, x);
  const double u = params.u;
  const double v = params.v;
  TypeSums out;

  for (std::int64_t n = floor_of(u) + 1; n <= x; ++n) {
    const double lam = table.von_mangoldt(n);
    if (lam != 0.0) out.lhs += lam * values[n];
  }

  const std::int64_t lmax = std::min<std::int64_t>(floor_of(u * v), x);
  std::vector<double> t1(static_cast<std::size_t>(std::max<std::int64_t>(lmax, 0)), 0.0);
  parallel_for_chunks(t1.size(), [&](std::size_t idx) {
    const std::int64_t l = static_cast<std::int64_t>(idx) + 1;
    std::complex<double> suffix = 0.0;
    double best = 0.0;
    for (std::int64_t m = x / l; m >= 1; --m) {
      suffix += values[m * l];
      best = std::max(best, std::abs(suffix));
    }
    t1[idx] = best;
  });
  for (double s : t1) out.T1 += s;

  const std::vector<int> b = b_coeff_table(table, x, v);
  std::complex<double> t2 = 0.0;
  for (std::int64_t m = floor_of(u) + 1; static_cast<double>(m) <= params.x / v; ++m) {
    const double lam = table.von_mangoldt(m);
    if (lam == 0.0) continue;
    std::complex<double> inner = 0.0;
    for (std::int64_t l = floor_of(v) + 1; l <= x / m; ++l) {
      if (b[l] != 0) inner += static_cast<double>(b[l]) * values[m * l];
    }
    t2 += lam * inner;
  }
  out.T2 = std::abs(t2);
  const double denom = std::log(2.0 * params.x) * out.T1 + out.T2;
  out.fitted_constant = denom > 0.0 ? std::abs(out.lhs) / denom : 0.0;
  return out;
}

VaughanPieces vaughan_reassemble(const ArithTable& table, const ArithmeticFunction& f,
                                 const VaughanParams& params) {
  params.validate();
  const std::int64_t x = floor_of(params.x);
  require_within(table, x);
  const auto values = cache_values(f, x);
  const std::int64_t U = floor_of(params.u);
  const std::int64_t V = floor_of(params.v);
  VaughanPieces out;

  for (std::int64_t n = 1; n <= std::min(U, x); ++n) {
    out.S1 += table.von_mangoldt(n) * values[n];
  }
  // Type I: the coefficient of m d is Lambda(m) mu(d), followed by a free
  // variable r with m d r <= x.
  for (std::int64_t m = 1; m <= U; ++m) {
    const double lam = table.von_mangoldt(m);
    if (lam == 0.0) continue;
    for (std::int64_t d = 1; d <= V && m * d <= x; ++d) {
      const int mu = table.moebius(d);
      if (mu == 0) continue;
      std::complex<double> inner = 0.0;
      const std::int64_t e = m * d;
      for (std::int64_t r = 1; r <= x / e; ++r) inner += values[e * r];
      out.S2 -= lam * static_cast<double>(mu) * inner;
    }
  }
  for (std::int64_t d = 1; d <= std::min(V, x); ++d) {
    const int mu = table.moebius(d);
    if (mu == 0) continue;
    std::complex<double> inner = 0.0;
    for (std::int64_t h = 2; h <= x / d; ++h) {
      inner += std::log(static_cast<double>(h)) * values[h * d];
    }
    out.S3 += static_cast<double>(mu) * inner;
  }
  // Type II over m > u, k > v.
  const std::vector<int> b = b_coeff_table(table, x, params.v);
  for (std::int64_t m = U + 1; m <= x; ++m) {
    const double lam = table.von_mangoldt(m);
    if (lam == 0.0) continue;
    std::complex<double> inner = 0.0;
    for (std::int64_t k = V + 1; k <= x / m; ++k) {
      if (b[k] != 0) inner += static_cast<double>(b[k]) * values[m * k];
    }
    out.S4 -= lam * inner;
  }
  return out;
}

PrimePowers prime_powers_between(const ArithTable& table, std::int64_t n_lo,
                                 std::int64_t n_hi) {
  if (n_lo > n_hi) throw RangeError("empty prime-power range");
  require_within(table, std::max<std::int64_t>(n_lo, 1));
  require_within(table, n_hi);
  PrimePowers out;
  for (std::int64_t n = std::max<std::int64_t>(n_lo, 2); n <= n_hi; ++n) {
    const std::int64_t p = table.prime_power_base(n);
    if (p == 0) continue;
    out.n.push_back(n);
    out.weight.push_back(std::log(static_cast<double>(p)));
  }
  return out;
}

std::complex<double> lambda_exp_sum(const PrimePowers& terms, Phase theta) {
  constexpr std::size_t kChunk = 1 << 15;
  const std::size_t chunks = (terms.n.size() + kChunk - 1) / kChunk;
  std::vector<std::complex<double>> partial(chunks);
  auto run = [&](std::size_t b) {
    std::complex<double> s = 0.0;
    const std::size_t end = std::min(terms.n.size(), (b + 1) * kChunk);
    for (std::size_t i = b * kChunk; i < end; ++i) {
      s += terms.weight[i] * unit_root(phase_mul(theta, terms.n[i]));
    }
    partial[b] = s;
  };
  if (chunks <= 1) {
    if (chunks == 1) run(0);
  } else {
    parallel_for_chunks(chunks, run);
  }
  std::complex<double> total = 0.0;
  for (const auto& s : partial) total += s;
  return total;
}

std::complex<double> lambda_exp_sum(const ArithTable& table, std::int64_t n_lo,
                                    std::int64_t n_hi, const FixedReal& theta) {
  return lambda_exp_sum(prime_powers_between(table, n_lo, n_hi), phase_of(theta));
}

}  // namespace dioph
