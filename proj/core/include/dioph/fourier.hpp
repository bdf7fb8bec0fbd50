#pragma once

#include <complex>
#include <functional>
#include <cstdint>
#include <span>
#include <vector>

#include "dioph/fixed_real.hpp"
#include "dioph/realnum.hpp"

namespace dioph {

// psi(x) = x - floor(x) - 1/2, in [-1/2, 1/2).
double sawtooth_psi(double x);
double sawtooth_psi(const FixedReal& x);
double sawtooth_psi_phase(Phase t);

// W(t) = pi t (1 - |t|) cot(pi t) + |t| for 0 < |t| < 1 and W(0) = 1.
// Throws RangeError for |t| >= 1.
double vaaler_weight(double t);

struct PsiTau {
  double psi_star = 0.0;
  double tau = 0.0;
};

// Vaaler's trigonometric approximation of degree J to the sawtooth:
//   psi*(x) = -sum_{1<=|j|<=J} W(j/(J+1)) e(jx) / (2 pi i j)
//   tau(x)  = (1/(2J+2)) sum_{|j|<=J} (1 - |j|/(J+1)) e(jx)
// with |psi*(x) - psi(x)| <= tau(x) for every real x.
class VaalerPolynomial {
 public:
  explicit VaalerPolynomial(int J);

  int degree() const { return J_; }
  // Coefficient of e(jx) in psi*, for 1 <= |j| <= J.
  std::complex<double> psi_star_coefficient(int j) const;
  // Coefficient of e(jx) in tau, for |j| <= J.
  double tau_coefficient(int j) const;

  PsiTau evaluate(Phase x) const;
  PsiTau evaluate(const FixedReal& x) const { return evaluate(phase_of(x)); }
  PsiTau evaluate(double x) const { return evaluate(FixedReal::from_double(x)); }

 private:
  int J_;
  std::vector<double> sine_;  // psi* = sum_j sine_[j] sin(2 pi j x)
  std::vector<double> tau_;   // tau_[j] for j = 0..J
};

PsiTau psi_star_and_tau(const VaalerPolynomial& poly, const FixedReal& x);

// sum_{n_lo <= n <= n_hi} e(n theta) with every phase n theta reduced
// exactly mod 1 before the trigonometric step. Requires n_lo <= n_hi.
std::complex<double> exp_sum(std::int64_t n_lo, std::int64_t n_hi, Phase theta);
std::complex<double> exp_sum(std::int64_t n_lo, std::int64_t n_hi, const FixedReal& theta);

// |sum_{n=1}^{length} e(n theta)| from the closed form
// |sin(pi length theta) / sin(pi theta)| (length for integral theta).
double geometric_magnitude(std::int64_t length, Phase theta);

// min(cap, ||t||^{-1}), reading ||t|| = 0 as an infinite reciprocal.
double min_reciprocal(double cap, Phase t);

struct MinSum {
  double lhs = 0.0;
  double rhs = 0.0;
};

// lhs = sum_{1<=l<=L} min(x/l, ||l c||^{-1}); rhs = (x/q + L + q) log(2 L q x).
// Requires |c - a/q| <= q^{-2} and gcd(a, q) = 1, checked exactly
// (ContractError otherwise).
MinSum min_sum_with_bound(std::int64_t L, double x, const FixedReal& c,
                          RationalApprox approx);

struct EnumerationCap {
  double max_terms = 2e8;
};

// sum over 0 != j with |j_i| <= H_i and 1 <= m <= M of min(x/m, ||m j.c||^{-1}).
// Summed sequentially in lexicographic j order (j_1 slowest), m ascending.
double R_d_sum(std::span<const std::int64_t> H, std::int64_t M, double x,
               const CVector& c, const EnumerationCap& cap = {});

struct RABound {
  // sum over 1 <= |j_i| <= J of |j_1...j_d|^{-1} sum_{m<=M} min(x/m, ||m j.c||^{-1})
  double exact = 0.0;
  // (log 2x)^d max over dyadic H_i = 2^t <= J of R_d(H, M, x) / (H_1...H_d)
  double dyadic_majorant = 0.0;
  // (log 2x)^{d+1} (M + (xJ)^{1-1/(k+1)})
  double bound = 0.0;
  double ratio = 0.0;
};

RABound R_A_dyadic_bound(std::int64_t M, double x, std::int64_t J, const CVector& c,
                         const EnumerationCap& cap = {});

// Weighted sum over 1 <= |j_i| <= J of |j_1...j_d|^{-1} g(j.c) with g evaluated
// on the exact phase of j.c. Deterministic for any thread count.
double weighted_frequency_sum(std::int64_t J, std::span<const Phase> phases,
                              const std::function<double(Phase)>& g);

}  // namespace dioph
