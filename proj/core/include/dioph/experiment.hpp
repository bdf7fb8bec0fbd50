#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/counting.hpp"
#include "dioph/fixed_real.hpp"

namespace dioph {

// One audited inequality: an exactly evaluated side against the bounding
// expression, ratio = exact / bound.
struct AuditRow {
  std::string label;
  double exact = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  std::vector<std::pair<std::string, double>> params;

  double param(const std::string& key) const;
};

AuditRow make_row(std::string label, double exact, double bound,
                  std::vector<std::pair<std::string, double>> params = {});

// Geometric grid base^lo .. base^hi.
std::vector<std::int64_t> geometric_grid(std::int64_t base, int lo, int hi);

struct TheoremIRow {
  std::int64_t N = 0;
  long double integral = 0.0L;  // sum_{p <= N} lambda(B_p)
  double G_N = 0.0;             // min(c_1..c_d, d) form
  double G_N_variant = 0.0;     // min(c_1..c_d, 2) form
  double ratio = 0.0;           // integral / ((b - a) G_N)
  std::int64_t intervals = 0;
};

struct TheoremIReport {
  FixedReal a;
  FixedReal b;
  std::vector<TheoremIRow> rows;
  // Ratios over the upper half of the grid never decrease.
  bool top_half_nondecreasing = true;
};

// int_a^b F_N / ((b - a) G_N) along an ascending N grid. All rows come from
// one exact integral at the largest N: the per-prime terms do not depend on
// N, so each row is the prefix of terms with p <= N.
TheoremIReport theorem_i_check(const FixedReal& a, const FixedReal& b,
                               const std::vector<std::int64_t>& N_grid,
                               const ApproxConfig& cfg, const ArithTable& table);

struct TheoremIIRow {
  std::int64_t N = 0;
  double G_N = 0.0;
  double K_est = 0.0;      // max over samples of max(0, (F_N - J_N) / G_N)
  double V_N = 0.0;        // (B - A) mean |J_N|
  double V_over_G = 0.0;
  double mean_F = 0.0;
};

struct TheoremIIReport {
  std::vector<TheoremIIRow> rows;
  double K_est = 0.0;  // max over rows
  std::vector<FixedReal> samples;
  bool top_half_V_over_G_decreasing = true;
};

// Kronecker points A + (B - A) {s + j (phi - 1)}, s derived from seed.
std::vector<FixedReal> kronecker_samples(const FixedReal& A, const FixedReal& B,
                                         std::int64_t count, std::uint64_t seed);

TheoremIIReport theorem_ii_check(const std::vector<std::int64_t>& N_grid,
                                 const ApproxConfig& cfg, std::int64_t sample_count,
                                 std::uint64_t seed, const ArithTable& table,
                                 const SieveOptions& options = {});

struct LimsupTrack {
  std::vector<std::int64_t> N;
  std::vector<std::int64_t> F;
  std::vector<double> ratio;        // F_N / G_N
  std::vector<double> running_max;
};

LimsupTrack limsup_track(const FixedReal& alpha, const ApproxConfig& cfg,
                         const std::vector<std::int64_t>& N_grid, const ArithTable& table);

struct AuditOptions {
  std::optional<std::int64_t> J;  // default floor(P^{1/(3k+2)})
  std::optional<double> u;        // default P^{2/5}; v = u
  double max_terms = 5e8;
};

// Evaluates the exponential-sum chain for the full index set {1..d} at
// window base P over [A, B]: each row pairs an exact quantity with the
// expression bounding it.
std::vector<AuditRow> bound_audit(std::int64_t P, const ApproxConfig& cfg,
                                  const ArithTable& table, const AuditOptions& options = {});

struct QuadResult {
  double integral = 0.0;
  double bound = 0.0;  // min{K, max{1, 1/|x|}} log K
  double ratio = 0.0;
};

// int_A^B min(K, ||alpha x||^{-1}) d alpha by adaptive Simpson on the pieces
// between the integrand's kinks (multiples of 1/2 and n +- 1/K in beta = alpha x).
QuadResult intlemma_quad(double A, double B, double K, double x, int resolution = 1000);

struct AverageERow {
  std::int64_t N = 0;
  double lhs = 0.0;     // sum_{t1 t2 <= Q} (t1 t2)^eps int_A^B E d alpha
  double target = 0.0;  // N mu^{d+1} / log^2 N
  double ratio = 0.0;
};

// The integral over alpha uses the midpoint rule with `samples` points.
std::vector<AverageERow> average_E_check(const std::vector<std::int64_t>& N_grid,
                                         const ApproxConfig& cfg, std::int64_t samples = 64,
                                         const SieveOptions& options = {});

}  // namespace dioph
