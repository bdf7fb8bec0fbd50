#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/fixed_real.hpp"
#include "dioph/realnum.hpp"

namespace dioph {

// One problem instance: the line direction c with exponent k, the exponent
// loss epsilon and the alpha range [A, B].
struct ApproxConfig {
  CVector c;
  double epsilon = 0.0;
  FixedReal A;
  FixedReal B;

  int d() const { return c.dim(); }
  // gamma_{d,k} = 1 / (d (3k + 2)).
  double gamma() const;
  // p^{epsilon - gamma}, the approximation radius attached to p.
  double radius(double p) const;

  // Revalidates c and requires 0 < epsilon < gamma and 0 < A < B
  // (ConfigError otherwise).
  void validate() const;
};

struct SolutionTuple {
  std::int64_t p = 0;
  std::int64_t r = 0;
  std::vector<std::int64_t> q;
  FixedReal slack0;              // p alpha - r
  std::vector<FixedReal> slack;  // p c_i alpha - q_i
};

struct CountResult {
  std::int64_t count = 0;
  std::vector<SolutionTuple> tuples;
};

// Counts primes p <= N admitting a tuple (p, q_1..q_d, r):
//   0 < p alpha - r < p^{eps-gamma},  0 < p c_i alpha - q_i < p^{eps-gamma},
// r prime, q_i >= 1. The products p c_i alpha are evaluated as
// p * (c_i alpha) with c_i alpha rounded down at 2^-128; the radius is the
// double value of p^{eps-gamma}, compared exactly.
class SolutionCounter {
 public:
  SolutionCounter(const ApproxConfig& cfg, std::int64_t N, const ArithTable& table);

  std::int64_t N() const { return N_; }
  CountResult count(const FixedReal& alpha, bool keep_tuples = true) const;
  std::int64_t count_only(const FixedReal& alpha) const {
    return count(alpha, false).count;
  }

 private:
  const ApproxConfig* cfg_;
  const ArithTable* table_;
  std::int64_t N_;
  std::vector<std::int64_t> primes_;
  std::vector<Phase> thresholds_;  // radius * 2^128 (exact)
  std::vector<bool> always_;       // radius >= 1
};

CountResult count_FN(const FixedReal& alpha, const ApproxConfig& cfg, std::int64_t N,
                     const ArithTable& table);

// Per-prime measure of B_p. `length` is measured in the scaled variable
// s = p alpha, so lambda(B_p) = length / p exactly.
struct IntegralTerm {
  std::int64_t p = 0;
  FixedReal length;
  std::int64_t intervals = 0;
};

struct IntegralResult {
  std::vector<IntegralTerm> terms;  // ascending p, empty terms omitted
  // Upper bound on the number of disjoint intervals making up all B_p.
  std::int64_t intervals = 0;

  // sum_p length_p / p, accumulated in ascending p.
  long double value() const;
};

enum class IntegralMethod { automatic, direct, sweep };

// Exact int_a^b F_N(alpha) d alpha = sum_{p <= N} lambda(B_p). The slopes
// enter through kappa_i = 1/c_i rounded down at 2^-128. `sweep` (d = 1 only)
// evaluates all primes r at once with an offline range-sum structure;
// `direct` enumerates every (p, r, q). Both give identical terms.
IntegralResult integral_FN_exact(const FixedReal& a, const FixedReal& b,
                                 const ApproxConfig& cfg, std::int64_t N,
                                 const ArithTable& table,
                                 IntegralMethod method = IntegralMethod::automatic);

// A^2/B^2 min(c_1..c_d, d)^{d-1} / 2^{d+1} N^{1-(d+1)(gamma-eps)} (log N)^{-2}.
double G_N_value(const ApproxConfig& cfg, std::int64_t N);
// The same with min(c_1..c_d, 2).
double G_N_variant(const ApproxConfig& cfg, std::int64_t N);

struct WindowParams {
  std::int64_t P = 0;
  FixedReal a;
  FixedReal b;
  double mu_window = 0.0;  // (a + b) / (2a)
  double eta = 0.0;        // (mu P)^{eps - gamma}
  double delta = 0.0;      // min(c) eta / 2
  double nu = 0.0;         // eta / (mu P) min(1/2, 1/c_i)

  static WindowParams make(std::int64_t P, const FixedReal& a, const FixedReal& b,
                           const ApproxConfig& cfg);
};

enum class SumOrder { ascending, descending };

struct WindowCounts {
  double T_P = 0.0;
  std::int64_t S_P = 0;
  std::int64_t R_P = 0;
  std::int64_t N_P = 0;
  std::int64_t n_lo = 0;  // ceil(P a mu)
  std::int64_t n_hi = 0;  // floor(b P)
};

// T(P) = sum_{P a mu <= n <= b P} prod_i ([-c_i n] - [-(c_i n + delta)]) Lambda(n)
// and the companion counts S(P), R(P) and N(P) = R(P) S(P). T(P) is
// accumulated per prime base, so both iteration orders give the same bits.
WindowCounts window_counts(const WindowParams& wp, const ApproxConfig& cfg,
                           const ArithTable& table, SumOrder order = SumOrder::ascending);

// {n [n alpha] : 1 <= n <= N, {n alpha} < mu, {n c_i alpha} < mu}, with
// mu = N^{eps-gamma} unless overridden.
std::vector<std::pair<std::int64_t, i128>> product_set_A(
    const FixedReal& alpha, const ApproxConfig& cfg, std::int64_t N,
    std::optional<double> mu = std::nullopt);

struct SieveSideParams {
  std::int64_t N = 0;
  double mu_target = 0.0;  // N^{eps - gamma}
  double Q = 0.0;          // N^eps
  double L = 0.0;          // Q^3 / mu
  std::int64_t t1 = 1;
  std::int64_t t2 = 1;

  static SieveSideParams make(std::int64_t N, const ApproxConfig& cfg);
  std::int64_t L_int() const;
};

struct SieveSideCounts {
  std::int64_t S_exact = 0;
  double main_term = 0.0;
  double E_bound = 0.0;
};

struct SieveOptions {
  double max_terms = 2e8;
};

// S(alpha; t1, t2) counted directly from its three conditions, the main
// term N mu^{d+1}/(t1 t2) and the min-majorant of E(alpha; t1, t2).
SieveSideCounts sieve_side_counts(const FixedReal& alpha, const SieveSideParams& sp,
                                  const ApproxConfig& cfg, const SieveOptions& options = {});

// The min-majorant of E(alpha; t1, t2) alone (the E_bound field above).
double sieve_side_E_bound(const FixedReal& alpha, const SieveSideParams& sp,
                          const ApproxConfig& cfg, const SieveOptions& options = {});

// E(alpha; t1, t2) itself: mu^{d+1}/t2 times the sum over 0 != m of
// |sum_{n <= N/t1} e(n theta_m)|, each inner sum taken in closed form.
double sieve_side_E_raw(const FixedReal& alpha, const SieveSideParams& sp,
                        const ApproxConfig& cfg, const SieveOptions& options = {});

// sum_{t1 t2 <= Q} (t1 t2)^eps (N mu^d / L + E(alpha; t1, t2)) with E taken
// from its min-majorant.
double J_N_alpha(const FixedReal& alpha, const SieveSideParams& sp, const ApproxConfig& cfg,
                 const SieveOptions& options = {});

// The pairs (t1, t2) with t1 t2 <= Q, ordered by t1 then t2.
std::vector<std::pair<std::int64_t, std::int64_t>> divisor_pairs(double Q);

}  // namespace dioph
