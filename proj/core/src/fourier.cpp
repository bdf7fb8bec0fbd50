#include "dioph/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "dioph/error.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

double sawtooth_psi(double x) { return x - std::floor(x) - 0.5; }

double sawtooth_psi_phase(Phase t) {
  // The conversion to double may round a fraction just below 1 up to 1.
  const double f = std::min(phase_to_double(t), std::nextafter(1.0, 0.0));
  return f - 0.5;
}

double sawtooth_psi(const FixedReal& x) { return sawtooth_psi_phase(phase_of(x)); }

double vaaler_weight(double t) {
  const double a = std::fabs(t);
  if (!(a < 1.0)) throw RangeError("vaaler_weight requires |t| < 1");
  if (a == 0.0) return 1.0;
  const double pt = std::numbers::pi * a;
  return pt * (1.0 - a) * std::cos(pt) / std::sin(pt) + a;
}

VaalerPolynomial::VaalerPolynomial(int J) : J_(J) {
  if (J < 1) throw RangeError("Vaaler polynomial degree must be positive");
  sine_.assign(J + 1, 0.0);
  tau_.assign(J + 1, 0.0);
  const double scale = 1.0 / (2.0 * J + 2.0);
  tau_[0] = scale;
  for (int j = 1; j <= J; ++j) {
    const double t = static_cast<double>(j) / (J + 1);
    // The j and -j terms combine to -W sin(2 pi j x) / (pi j).
    sine_[j] = -vaaler_weight(t) / (std::numbers::pi * j);
    tau_[j] = (1.0 - t) * scale;
  }
}

std::complex<double> VaalerPolynomial::psi_star_coefficient(int j) const {
  if (j == 0 || j > J_ || j < -J_) throw RangeError("psi* coefficient index out of range");
  const double w = vaaler_weight(static_cast<double>(j) / (J_ + 1));
  return -w / std::complex<double>(0.0, 2.0 * std::numbers::pi * j);
}

double VaalerPolynomial::tau_coefficient(int j) const {
  if (j > J_ || j < -J_) throw RangeError("tau coefficient index out of range");
  return tau_[j < 0 ? -j : j];
}

PsiTau VaalerPolynomial::evaluate(Phase x) const {
  PsiTau out{0.0, tau_[0]};
  for (int j = 1; j <= J_; ++j) {
    const std::complex<double> e = unit_root(phase_mul(x, j));
    out.psi_star += sine_[j] * e.imag();
    out.tau += 2.0 * tau_[j] * e.real();
  }
  return out;
}

PsiTau psi_star_and_tau(const VaalerPolynomial& poly, const FixedReal& x) {
  return poly.evaluate(x);
}

namespace {
constexpr std::int64_t kExpChunk = std::int64_t{1} << 16;
}

std::complex<double> exp_sum(std::int64_t n_lo, std::int64_t n_hi, Phase theta) {
  if (n_lo > n_hi) throw RangeError("exp_sum requires n_lo <= n_hi");
  const std::vector<long long> bounds = block_bounds(n_lo, n_hi + 1, kExpChunk);
  std::vector<std::complex<double>> partial(bounds.size() - 1);
  auto run = [&](std::size_t b) {
    std::complex<double> s = 0.0;
    Phase t = phase_mul(theta, bounds[b]);
    for (long long n = bounds[b]; n < bounds[b + 1]; ++n, t += theta) s += unit_root(t);
    partial[b] = s;
  };
  if (partial.size() == 1) {
    run(0);
  } else {
    parallel_for_chunks(partial.size(), run);
  }
  std::complex<double> total = 0.0;
  for (const auto& s : partial) total += s;
  return total;
}

std::complex<double> exp_sum(std::int64_t n_lo, std::int64_t n_hi, const FixedReal& theta) {
  return exp_sum(n_lo, n_hi, phase_of(theta));
}

double geometric_magnitude(std::int64_t length, Phase theta) {
  if (length <= 0) return 0.0;
  if (theta == 0) return static_cast<double>(length);
  const double num = std::sin(std::numbers::pi * phase_distance(phase_mul(theta, length)));
  const double den = std::sin(std::numbers::pi * phase_distance(theta));
  return std::fabs(num / den);
}

double min_reciprocal(double cap, Phase t) {
  const u128 bits = phase_distance_bits(t);
  if (bits == 0) return cap;
  return std::min(cap, 1.0 / std::ldexp(static_cast<double>(bits), -128));
}

MinSum min_sum_with_bound(std::int64_t L, double x, const FixedReal& c,
                          RationalApprox approx) {
  if (L < 1) throw RangeError("min_sum_with_bound requires L >= 1");
  if (!(x > 1.0)) throw RangeError("min_sum_with_bound requires x > 1");
  if (approx.q < 1 || std::gcd(approx.a, approx.q) != 1) {
    throw ContractError("approximation a/q must have q >= 1 and gcd(a, q) = 1");
  }
  const FixedReal err = (c * approx.q - FixedReal::from_int(approx.a)).abs();
  if (err * approx.q > FixedReal::from_int(1)) {
    throw ContractError("approximation violates |c - a/q| <= q^-2");
  }
  const Phase t = phase_of(c);
  MinSum out;
  for (std::int64_t l = 1; l <= L; ++l) {
    out.lhs += min_reciprocal(x / static_cast<double>(l), phase_mul(t, l));
  }
  const double q = static_cast<double>(approx.q);
  out.rhs = (x / q + static_cast<double>(L) + q) * std::log(2.0 * L * q * x);
  return out;
}

namespace {

double box_size(std::span<const std::int64_t> H) {
  double n = 1.0;
  for (auto h : H) n *= 2.0 * static_cast<double>(h) + 1.0;
  return n;
}

}  // namespace

double R_d_sum(std::span<const std::int64_t> H, std::int64_t M, double x,
               const CVector& c, const EnumerationCap& cap) {
  const int d = c.dim();
  if (static_cast<int>(H.size()) != d) throw ContractError("R_d_sum: H has wrong dimension");
  if (M < 1) throw RangeError("R_d_sum requires M >= 1");
  for (auto h : H) {
    if (h < 0) throw RangeError("R_d_sum requires H_i >= 0");
  }
  if (box_size(H) * static_cast<double>(M) > cap.max_terms) {
    throw ResourceError("R_d_sum enumeration exceeds cap");
  }
  std::vector<Phase> phases;
  for (const auto& ci : c.c) phases.push_back(phase_of(ci));
  std::vector<std::int64_t> j(d);
  for (int i = 0; i < d; ++i) j[i] = -H[i];
  double total = 0.0;
  for (;;) {
    const bool nonzero = std::any_of(j.begin(), j.end(), [](auto v) { return v != 0; });
    if (nonzero) {
      Phase t = 0;
      for (int i = 0; i < d; ++i) t += phase_mul(phases[i], j[i]);
      Phase mt = 0;
      for (std::int64_t m = 1; m <= M; ++m) {
        mt += t;
        total += min_reciprocal(x / static_cast<double>(m), mt);
      }
    }
    int pos = d - 1;
    while (pos >= 0 && j[pos] == H[pos]) {
      j[pos] = -H[pos];
      --pos;
    }
    if (pos < 0) break;
    ++j[pos];
  }
  return total;
}

double weighted_frequency_sum(std::int64_t J, std::span<const Phase> phases,
                              const std::function<double(Phase)>& g) {
  const int d = static_cast<int>(phases.size());
  if (J < 1) throw RangeError("frequency range J must be positive");
  // Index the 2J nonzero values of each coordinate: k -> k - J for k < J,
  // k - J + 1 otherwise.
  const std::int64_t side = 2 * J;
  std::int64_t count = 1;
  for (int i = 0; i < d; ++i) {
    if (count > (std::int64_t{1} << 40) / side) {
      throw ResourceError("frequency enumeration exceeds cap");
    }
    count *= side;
  }
  const std::vector<long long> bounds =
      block_bounds(0, count, std::max<std::int64_t>(1, count / 512));
  std::vector<double> partial(bounds.size() - 1, 0.0);
  parallel_for_chunks(partial.size(), [&](std::size_t b) {
    double s = 0.0;
    for (long long idx = bounds[b]; idx < bounds[b + 1]; ++idx) {
      long long rest = idx;
      Phase t = 0;
      double weight = 1.0;
      for (int i = d - 1; i >= 0; --i) {
        const std::int64_t k = rest % side;
        rest /= side;
        const std::int64_t j = k < J ? k - J : k - J + 1;
        t += phase_mul(phases[i], j);
        weight /= static_cast<double>(j < 0 ? -j : j);
      }
      s += weight * g(t);
    }
    partial[b] = s;
  });
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

RABound R_A_dyadic_bound(std::int64_t M, double x, std::int64_t J, const CVector& c,
                         const EnumerationCap& cap) {
  const int d = c.dim();
  if (M < 1 || J < 1) throw RangeError("R_A_dyadic_bound requires M, J >= 1");
  if (!(x > 0.0)) throw RangeError("R_A_dyadic_bound requires x > 0");
  if (std::pow(2.0 * J, d) * static_cast<double>(M) > cap.max_terms) {
    throw ResourceError("R_A enumeration exceeds cap");
  }
  std::vector<Phase> phases;
  for (const auto& ci : c.c) phases.push_back(phase_of(ci));

  RABound out;
  out.exact = weighted_frequency_sum(J, phases, [&](Phase t) {
    double s = 0.0;
    Phase mt = 0;
    for (std::int64_t m = 1; m <= M; ++m) {
      mt += t;
      s += min_reciprocal(x / static_cast<double>(m), mt);
    }
    return s;
  });

  // Dyadic majorant: only computed when every dyadic box fits the cap.
  std::vector<std::int64_t> dyads;
  for (std::int64_t h = 1; h <= J; h *= 2) dyads.push_back(h);
  const double biggest = std::pow(2.0 * dyads.back() + 1.0, d) * static_cast<double>(M);
  const double log2x = std::log(2.0 * x);
  if (biggest * std::pow(static_cast<double>(dyads.size()), d) <= cap.max_terms) {
    std::vector<std::size_t> pick(d, 0);
    double best = 0.0;
    for (;;) {
      std::vector<std::int64_t> H(d);
      double volume = 1.0;
      for (int i = 0; i < d; ++i) {
        H[i] = dyads[pick[i]];
        volume *= static_cast<double>(H[i]);
      }
      best = std::max(best, R_d_sum(H, M, x, c, cap) / volume);
      int pos = d - 1;
      while (pos >= 0 && pick[pos] + 1 == dyads.size()) pick[pos--] = 0;
      if (pos < 0) break;
      ++pick[pos];
    }
    out.dyadic_majorant = std::pow(log2x, d) * best;
  } else {
    out.dyadic_majorant = std::nan("");
  }
  const double k = c.k;
  out.bound = std::pow(log2x, d + 1) *
                    (static_cast<double>(M) + std::pow(x * static_cast<double>(J), 1.0 - 1.0 / (k + 1.0)));
  out.ratio = out.exact / out.bound;
  return out;
}

}  // namespace dioph
