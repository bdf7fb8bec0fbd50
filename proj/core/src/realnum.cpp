#include "dioph/realnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dioph/error.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

FixedReal CVector::min_entry() const {
  if (c.empty()) throw ConfigError("empty slope vector");
  return *std::min_element(c.begin(), c.end());
}

void CVector::validate() const {
  if (c.empty()) throw ConfigError("slope vector must have dimension d >= 1");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] <= FixedReal()) {
      throw ConfigError("slope entry c_" + std::to_string(i + 1) +
                        " must be positive");
    }
  }
  if (!(k >= static_cast<double>(c.size()))) {
    throw ConfigError("Diophantine exponent k must satisfy k >= d (k = " +
                      std::to_string(k) + ", d = " + std::to_string(c.size()) + ")");
  }
}

CVector CVector::make(std::vector<FixedReal> c, double k) {
  CVector v{std::move(c), k, std::nullopt};
  v.validate();
  return v;
}

FloorFrac scaled_floor_frac(const FixedReal& x, std::int64_t n) {
  if (n <= 0) throw RangeError("scaled_floor_frac requires n >= 1");
  const FixedReal y = x * n;
  return {y.floor(), y.frac()};
}

FixedReal dist_nearest_int(const FixedReal& x) {
  return FixedReal(0, phase_distance_bits(phase_of(x)));
}

FixedReal inner_product(std::span<const std::int64_t> v, const CVector& c) {
  if (v.size() != c.c.size()) {
    throw ContractError("inner_product dimension mismatch");
  }
  constexpr std::int64_t kLimit = std::int64_t{1} << 40;
  FixedReal sum;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > kLimit || v[i] < -kLimit) {
      throw ResourceError("inner_product entry exceeds 2^40");
    }
    sum += c.c[i] * v[i];
  }
  return sum;
}

std::vector<RationalApprox> convergents(const FixedReal& x, std::int64_t max_q) {
  if (max_q < 1) throw RangeError("convergent denominator bound must be >= 1");
  std::vector<RationalApprox> out;
  auto emit = [&](i128 h, u128 k) {
    if (h > std::numeric_limits<std::int64_t>::max() ||
        h < std::numeric_limits<std::int64_t>::min()) {
      throw ResourceError("convergent numerator exceeds 64 bits");
    }
    out.push_back({static_cast<std::int64_t>(h), static_cast<std::int64_t>(k)});
  };
  i128 h_prev2 = 0, h_prev = 1;
  u128 k_prev2 = 1, k_prev = 0;
  auto step = [&](u128 a) -> bool {
    // a * k_prev stays far below 2^128 once a <= max_q.
    if (k_prev != 0 && a > static_cast<u128>(max_q)) return false;
    const u128 k = a * k_prev + k_prev2;
    if (k > static_cast<u128>(max_q)) return false;
    i128 h;
    if (__builtin_mul_overflow(static_cast<i128>(a), h_prev, &h) ||
        __builtin_add_overflow(h, h_prev2, &h)) {
      throw ResourceError("convergent numerator overflow");
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    emit(h, k);
    return true;
  };

  // a_0 = floor(x) may be negative; the two's complement round trip through
  // u128 preserves it since k_prev is still zero.
  step(static_cast<u128>(x.floor()));
  // The remaining quotients come from the expansion of 2^128 / frac.
  u128 den = x.frac_bits();
  if (den == 0) return out;
  const u128 all_ones = ~u128{0};
  u128 a = all_ones / den;
  u128 rem = all_ones % den + 1;
  if (rem == den) {
    ++a;
    rem = 0;
  }
  u128 num = den;
  den = rem;
  if (!step(a)) return out;
  while (den != 0) {
    a = num / den;
    rem = num % den;
    num = den;
    den = rem;
    if (!step(a)) break;
  }
  return out;
}

RationalApprox dirichlet_approx(const FixedReal& x, std::int64_t X) {
  if (X < 1) throw RangeError("dirichlet_approx requires X >= 1");
  return convergents(x, X).back();
}

bool satisfies_dirichlet(const FixedReal& x, RationalApprox approx, std::int64_t X) {
  const FixedReal err = (x * approx.q - FixedReal::from_int(approx.a)).abs();
  return err * X <= FixedReal::from_int(1);
}

namespace {

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  std::int64_t shell = 0;
  std::vector<std::int64_t> v;  // sign-normalized

  bool valid() const { return !v.empty(); }
};

bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid()) return a.valid();
  if (!a.valid()) return false;
  if (a.value != b.value) return a.value < b.value;
  if (a.shell != b.shell) return a.shell < b.shell;
  return a.v < b.v;
}

void normalize_sign(std::vector<std::int64_t>& v) {
  for (std::int64_t x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    return;
  }
}

std::int64_t sup_norm(std::span<const std::int64_t> v) {
  std::int64_t s = 0;
  for (std::int64_t x : v) s = std::max(s, x < 0 ? -x : x);
  return s;
}

Phase phase_dot(std::span<const std::int64_t> v, std::span<const Phase> phases) {
  Phase t = 0;
  for (std::size_t i = 0; i < v.size(); ++i) t += phase_mul(phases[i], v[i]);
  return t;
}

std::vector<Phase> phases_of(const CVector& c) {
  std::vector<Phase> out;
  for (const auto& x : c.c) out.push_back(phase_of(x));
  return out;
}

struct ShellBest {
  Candidate weighted;
  Candidate plain;
};

void offer(ShellBest& best, std::span<const std::int64_t> v, std::int64_t shell,
           Phase t, double weight) {
  const double dist = phase_distance(t);
  const double value = dist * weight;
  const bool w_ok = !best.weighted.valid() || value <= best.weighted.value;
  const bool p_ok = !best.plain.valid() || dist <= best.plain.value;
  if (!w_ok && !p_ok) return;
  std::vector<std::int64_t> canon(v.begin(), v.end());
  normalize_sign(canon);
  if (w_ok) {
    Candidate cand{value, shell, canon};
    if (better(cand, best.weighted)) best.weighted = std::move(cand);
  }
  if (p_ok) {
    Candidate cand{dist, shell, std::move(canon)};
    if (better(cand, best.plain)) best.plain = std::move(cand);
  }
}

double vector_count(std::int64_t n_bound, int dims) {
  return std::pow(2.0 * static_cast<double>(n_bound) + 1.0, dims);
}

DiophCertificate finish(std::int64_t n_bound, const ShellBest& best) {
  DiophCertificate cert;
  cert.n_bound = n_bound;
  cert.c_est = best.weighted.value;
  cert.v_min = best.weighted.v;
  cert.plain_min = best.plain.value;
  cert.v_plain_min = best.plain.v;
  return cert;
}

}  // namespace

DiophCertificate dioph_certify(const CVector& c, std::int64_t n_bound,
                               const CertifyOptions& options) {
  if (n_bound < 1) throw RangeError("dioph_certify requires N_bound >= 1");
  const int d = c.dim();
  if (d < 1) throw ConfigError("empty slope vector");
  if (vector_count(n_bound, d) > options.max_vectors) {
    throw ResourceError("dioph_certify enumeration (2N+1)^d = " +
                        std::to_string(vector_count(n_bound, d)) +
                        " exceeds cap " + std::to_string(options.max_vectors));
  }
  const std::vector<Phase> phases = phases_of(c);
  std::vector<ShellBest> shells(static_cast<std::size_t>(n_bound));

  parallel_for_chunks(shells.size(), [&](std::size_t idx) {
    const std::int64_t s = static_cast<std::int64_t>(idx) + 1;
    const double weight = std::pow(static_cast<double>(s), c.k);
    ShellBest& best = shells[idx];
    std::vector<std::int64_t> v(d);
    // The first coordinate of modulus s sits at position `lead`; earlier
    // coordinates stay below s in modulus, later ones range over [-s, s].
    for (int lead = 0; lead < d; ++lead) {
      std::vector<std::int64_t> digit(d, 0), radix(d);
      for (int i = 0; i < d; ++i) {
        radix[i] = i < lead ? 2 * s - 1 : (i == lead ? 2 : 2 * s + 1);
      }
      for (;;) {
        for (int i = 0; i < d; ++i) {
          if (i < lead) v[i] = digit[i] - (s - 1);
          else if (i == lead) v[i] = digit[i] == 0 ? -s : s;
          else v[i] = digit[i] - s;
        }
        const auto first = std::find_if(v.begin(), v.end(),
                                        [](std::int64_t x) { return x != 0; });
        if (*first > 0) offer(best, v, s, phase_dot(v, phases), weight);
        int pos = d - 1;
        while (pos >= 0 && digit[pos] + 1 == radix[pos]) digit[pos--] = 0;
        if (pos < 0) break;
        ++digit[pos];
      }
    }
  });

  ShellBest total;
  DiophCertificate cert;
  for (const ShellBest& sb : shells) {
    if (better(sb.weighted, total.weighted)) total.weighted = sb.weighted;
    if (better(sb.plain, total.plain)) total.plain = sb.plain;
    cert.c_est_by_shell.push_back(total.weighted.value);
  }
  auto by_shell = std::move(cert.c_est_by_shell);
  cert = finish(n_bound, total);
  cert.c_est_by_shell = std::move(by_shell);
  return cert;
}

DiophCertificate dioph_certify_sorted(const CVector& c, std::int64_t n_bound,
                                      const CertifyOptions& options) {
  if (n_bound < 1) throw RangeError("dioph_certify requires N_bound >= 1");
  const int d = c.dim();
  if (d < 1) throw ConfigError("empty slope vector");
  if (vector_count(n_bound, d - 1) > options.max_vectors) {
    throw ResourceError("dioph_certify_sorted tail enumeration exceeds cap");
  }
  const std::vector<Phase> phases = phases_of(c);

  struct Entry {
    Phase phase;
    std::int64_t v1;
  };
  std::vector<Entry> sorted;
  sorted.reserve(static_cast<std::size_t>(2 * n_bound + 1));
  for (std::int64_t v1 = -n_bound; v1 <= n_bound; ++v1) {
    sorted.push_back({phase_mul(phases[0], v1), v1});
  }
  std::sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
    return a.phase != b.phase ? a.phase < b.phase : a.v1 < b.v1;
  });
  const std::size_t size = sorted.size();

  // Tails (v_2..v_d) enumerated as base-(2N+1) digits.
  const std::int64_t side = 2 * n_bound + 1;
  std::int64_t tails = 1;
  for (int i = 1; i < d; ++i) tails *= side;
  const std::int64_t chunk = std::max<std::int64_t>(1, tails / 256);
  const std::vector<long long> bounds = block_bounds(0, tails, chunk);
  std::vector<ShellBest> partial(bounds.size() - 1);

  parallel_for_chunks(partial.size(), [&](std::size_t b) {
    ShellBest& best = partial[b];
    std::vector<std::int64_t> v(d);
    std::span<const Phase> tail_phases(phases.data() + 1, phases.size() - 1);
    for (std::int64_t index = bounds[b]; index < bounds[b + 1]; ++index) {
      std::int64_t rest = index;
      for (int i = d - 1; i >= 1; --i) {
        v[i] = rest % side - n_bound;
        rest /= side;
      }
      std::span<const std::int64_t> tail(v.data() + 1, v.size() - 1);
      const std::int64_t tail_norm = sup_norm(tail);
      const double weight_floor =
          std::pow(static_cast<double>(std::max<std::int64_t>(tail_norm, 1)), c.k);
      const Phase target = -phase_dot(tail, tail_phases);

      auto visit = [&](const Entry& e) {
        if (e.v1 == 0 && tail_norm == 0) return;
        v[0] = e.v1;
        const std::int64_t shell = std::max<std::int64_t>(tail_norm, e.v1 < 0 ? -e.v1 : e.v1);
        offer(best, v, shell, e.phase - target,
              std::pow(static_cast<double>(shell), c.k));
      };
      auto keep_going = [&](u128 gap) {
        if (gap > (u128{1} << 127)) return false;
        const double dist = std::ldexp(static_cast<double>(gap), -128);
        if (!best.weighted.valid() || dist * weight_floor <= best.weighted.value) return true;
        return !best.plain.valid() || dist <= best.plain.value;
      };

      const std::size_t start = static_cast<std::size_t>(
          std::lower_bound(sorted.begin(), sorted.end(), target,
                           [](const Entry& e, Phase t) { return e.phase < t; }) -
          sorted.begin());
      for (std::size_t step = 0; step < size; ++step) {
        const Entry& e = sorted[(start + step) % size];
        if (!keep_going(e.phase - target)) break;
        visit(e);
      }
      for (std::size_t step = 1; step <= size; ++step) {
        const Entry& e = sorted[(start + size - step) % size];
        if (!keep_going(target - e.phase)) break;
        visit(e);
      }
    }
  });

  ShellBest total;
  for (const ShellBest& sb : partial) {
    if (better(sb.weighted, total.weighted)) total.weighted = sb.weighted;
    if (better(sb.plain, total.plain)) total.plain = sb.plain;
  }
  return finish(n_bound, total);
}

}  // namespace dioph
