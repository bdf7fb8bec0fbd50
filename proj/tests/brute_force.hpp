#pragma once

// Brute-force enumeration of solution tuples, shared by the unit and
// acceptance tests.

#include <random>
#include <vector>

#include "dioph/counting.hpp"
#include "oracle.hpp"

namespace dioph::testing {

inline bool trial_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Brute-force quadruple loop over (p, r, q_1.., q_d) in exact rationals.
// The slopes enter as beta_i = c_i * alpha rounded at 2^-128, the radius as
// the double p^{eps - gamma}.
inline std::vector<SolutionTuple> brute_force(const FixedReal& alpha, const ApproxConfig& cfg,
                                       std::int64_t N) {
  const mpq_class a = to_mpq(alpha);
  std::vector<mpq_class> beta;
  for (const auto& ci : cfg.c.c) beta.push_back(to_mpq(ci * alpha));
  std::vector<SolutionTuple> out;
  for (std::int64_t p = 2; p <= N; ++p) {
    if (!trial_prime(p)) continue;
    const mpq_class eta(cfg.radius(static_cast<double>(p)));
    const std::int64_t r_max = floor_q(a * p).get_si() + 1;
    for (std::int64_t r = 2; r <= r_max; ++r) {
      if (!trial_prime(r)) continue;
      const mpq_class s0 = a * p - r;
      if (!(s0 > 0 && s0 < eta)) continue;
      std::vector<std::int64_t> q;
      for (const mpq_class& b : beta) {
        const std::int64_t q_max = floor_q(b * p).get_si() + 1;
        for (std::int64_t qi = 1; qi <= q_max; ++qi) {
          const mpq_class s = b * p - qi;
          if (s > 0 && s < eta) {
            q.push_back(qi);
            break;
          }
        }
      }
      if (q.size() == beta.size()) {
        SolutionTuple t;
        t.p = p;
        t.r = r;
        t.q = q;
        out.push_back(t);
      }
    }
  }
  return out;
}

inline ApproxConfig random_config(std::mt19937_64& rng) {
  ApproxConfig cfg;
  const int d = 1 + static_cast<int>(rng() % 2);
  std::vector<FixedReal> c;
  for (int i = 0; i < d; ++i) c.push_back(random_real(rng, 0, 3) + FixedReal::parse("0.25"));
  const double k = d + static_cast<double>(rng() % 3);
  cfg.c = CVector::make(c, k);
  const double gamma = 1.0 / (d * (3.0 * k + 2.0));
  cfg.epsilon = gamma * (0.05 + 0.9 * static_cast<double>(rng() % 1000) / 1000.0);
  cfg.A = FixedReal::parse("0.5");
  cfg.B = FixedReal::parse("3.5");
  cfg.validate();
  return cfg;
}


}  // namespace dioph::testing
