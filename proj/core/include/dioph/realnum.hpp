#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dioph/fixed_real.hpp"

namespace dioph {

// Slope vector c of the line together with its Diophantine exponent k.
struct CVector {
  std::vector<FixedReal> c;
  double k = 1.0;
  // Finite-range certificate (see dioph_certify), when one has been computed.
  std::optional<double> c_est;

  int dim() const { return static_cast<int>(c.size()); }
  FixedReal min_entry() const;

  // Throws ConfigError unless d >= 1, every c_i > 0 and k >= d.
  void validate() const;
  static CVector make(std::vector<FixedReal> c, double k);
};

struct FloorFrac {
  i128 floor = 0;
  FixedReal frac;
};

// n * x = floor + frac exactly; n must be positive.
FloorFrac scaled_floor_frac(const FixedReal& x, std::int64_t n);

// ||x||, the distance from x to the nearest integer (in [0, 1/2]).
FixedReal dist_nearest_int(const FixedReal& x);

// Exact v . c; every |v_i| must be at most 2^40.
FixedReal inner_product(std::span<const std::int64_t> v, const CVector& c);

struct RationalApprox {
  std::int64_t a = 0;
  std::int64_t q = 1;
};

// Continued-fraction convergents of x with denominator at most max_q.
std::vector<RationalApprox> convergents(const FixedReal& x, std::int64_t max_q);

// a/q with gcd(a, q) = 1, 1 <= q <= X and |x - a/q| <= 1/(qX): the last
// convergent whose denominator does not exceed X.
RationalApprox dirichlet_approx(const FixedReal& x, std::int64_t X);

// Exact check of |x - a/q| * q * X <= 1.
bool satisfies_dirichlet(const FixedReal& x, RationalApprox approx, std::int64_t X);

struct CertifyOptions {
  // Largest admissible number of enumerated vectors.
  double max_vectors = 2e8;
};

// Finite-range Diophantine certificate over 0 < ||v||_inf <= n_bound.
// Vectors are compared by (value, ||v||_inf, sign-normalized v
// lexicographically); sign-normalized means the first nonzero entry is
// positive, which identifies v with -v.
struct DiophCertificate {
  std::int64_t n_bound = 0;
  // min ||v.c|| * ||v||_inf^k and its minimizer.
  double c_est = 0.0;
  std::vector<std::int64_t> v_min;
  // min ||v.c|| and its minimizer.
  double plain_min = 0.0;
  std::vector<std::int64_t> v_plain_min;
  // Running certificate after each shell s = 1..n_bound (exhaustive search
  // only; empty otherwise).
  std::vector<double> c_est_by_shell;
};

// Exhaustive enumeration of ||v||_inf shells, parallel over shells.
// Throws ResourceError when (2 n_bound + 1)^d exceeds the cap.
DiophCertificate dioph_certify(const CVector& c, std::int64_t n_bound,
                               const CertifyOptions& options = {});

// Same certificate (identical value and minimizers) computed by sorting the
// phases v_1 c_1 and scanning outward from the target -(v_2..v_d).c with an
// exact pruning bound; the cap applies to (2 n_bound + 1)^(d-1).
DiophCertificate dioph_certify_sorted(const CVector& c, std::int64_t n_bound,
                                      const CertifyOptions& options = {});

}  // namespace dioph
