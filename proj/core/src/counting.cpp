#include "dioph/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dioph/error.hpp"
#include "dioph/fourier.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

double ApproxConfig::gamma() const {
  return 1.0 / (static_cast<double>(d()) * (3.0 * c.k + 2.0));
}

double ApproxConfig::radius(double p) const { return std::pow(p, epsilon - gamma()); }

void ApproxConfig::validate() const {
  c.validate();
  const double g = gamma();
  if (!(epsilon > 0.0 && epsilon < g)) {
    throw ConfigError("epsilon = " + std::to_string(epsilon) +
                      " violates the constraint 0 < ε < γ_{d,k} = 1/(d(3k+2)) = " +
                      std::to_string(g));
  }
  if (!(FixedReal() < A) || !(A < B)) {
    throw ConfigError("the alpha range needs 0 < A < B");
  }
}

namespace {

// x * 2^128 rounded up, so that frac_bits < result iff frac < x for x in (0, 1).
Phase radius_threshold(double x) {
  const double scaled = std::ceil(std::ldexp(x, 128));
  const double hi = std::floor(std::ldexp(scaled, -64));
  const double lo = scaled - std::ldexp(hi, 64);
  return (static_cast<u128>(hi) << 64) | static_cast<u128>(lo);
}

std::int64_t to_int64(i128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw ResourceError(std::string(what) + " exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

i128 ceil_of(const FixedReal& x) { return x.is_integer() ? x.floor() : x.floor() + 1; }

void require_table(const ArithTable& table, i128 n, const char* what) {
  if (n > table.limit()) {
    throw RangeError(std::string(what) + " needs the arithmetic table up to " + to_string(n) +
                     " (limit " + std::to_string(table.limit()) + ")");
  }
}

}  // namespace

SolutionCounter::SolutionCounter(const ApproxConfig& cfg, std::int64_t N,
                                 const ArithTable& table)
    : cfg_(&cfg), table_(&table), N_(N) {
  if (N < 0) throw RangeError("N must be nonnegative");
  if (N >= 2) {
    if (N > table.limit()) throw RangeError("N exceeds the arithmetic table limit");
    primes_ = table.primes_between(2, N);
  }
  for (std::int64_t p : primes_) {
    const double radius = cfg.radius(static_cast<double>(p));
    always_.push_back(radius >= 1.0);
    thresholds_.push_back(radius >= 1.0 ? 0 : radius_threshold(radius));
  }
}

CountResult SolutionCounter::count(const FixedReal& alpha, bool keep_tuples) const {
  if (!(FixedReal() < alpha)) throw RangeError("alpha must be positive");
  const int d = cfg_->d();
  std::vector<FixedReal> beta;
  std::vector<Phase> beta_phase;
  for (const auto& ci : cfg_->c.c) {
    beta.push_back(ci * alpha);
    beta_phase.push_back(phase_of(beta.back()));
  }
  const Phase a = phase_of(alpha);
  CountResult out;
  for (std::size_t idx = 0; idx < primes_.size(); ++idx) {
    const std::int64_t p = primes_[idx];
    const Phase T = thresholds_[idx];
    const bool always = always_[idx];
    const Phase f = phase_mul(a, p);
    if (f == 0 || (!always && f >= T)) continue;
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      const Phase g = phase_mul(beta_phase[i], p);
      ok = g != 0 && (always || g < T);
    }
    if (!ok) continue;
    const FixedReal y = alpha * p;
    require_table(*table_, y.floor(), "count_FN");
    const std::int64_t r = static_cast<std::int64_t>(y.floor());
    if (!table_->is_prime(r)) continue;
    std::vector<std::int64_t> q(d);
    for (int i = 0; i < d && ok; ++i) {
      const i128 qi = (beta[i] * p).floor();
      ok = qi >= 1;
      q[i] = ok ? to_int64(qi, "q_i") : 0;
    }
    if (!ok) continue;
    ++out.count;
    if (keep_tuples) {
      SolutionTuple t{p, r, q, y.frac(), {}};
      for (int i = 0; i < d; ++i) t.slack.push_back((beta[i] * p).frac());
      out.tuples.push_back(std::move(t));
    }
  }
  return out;
}

CountResult count_FN(const FixedReal& alpha, const ApproxConfig& cfg, std::int64_t N,
                     const ArithTable& table) {
  return SolutionCounter(cfg, N, table).count(alpha, true);
}

long double IntegralResult::value() const {
  long double total = 0.0L;
  for (const auto& t : terms) total += t.length.to_long_double() / static_cast<long double>(t.p);
  return total;
}

namespace {

// For every prime r <= R and every coordinate i, the q >= 1 whose interval
// [q kappa_i, q kappa_i + W1_i) meets [r, r + W0) for the widest radius in
// use, stored as delta = q kappa_i - r.
struct ResiduePoints {
  std::vector<std::uint32_t> offset;  // CSR by prime index
  std::vector<std::int64_t> q;
  std::vector<FixedReal> delta;
};

ResiduePoints build_points(const std::vector<std::int64_t>& primes, const FixedReal& c,
                           const FixedReal& kappa, const FixedReal& w0max) {
  ResiduePoints pts;
  const FixedReal w1max = w0max * kappa;
  const FixedReal lo = -w1max;
  const std::int64_t span =
      static_cast<std::int64_t>(std::ceil(w0max.to_double() * std::max(1.0, c.to_double()))) + 2;
  pts.offset.reserve(primes.size() + 1);
  pts.offset.push_back(0);
  for (std::int64_t r : primes) {
    const std::int64_t qa = to_int64((c * r).floor(), "q");
    for (std::int64_t q = std::max<std::int64_t>(1, qa - span); q <= qa + span; ++q) {
      const FixedReal delta = kappa * q - FixedReal::from_int(r);
      if (lo < delta && delta < w0max) {
        pts.q.push_back(q);
        pts.delta.push_back(delta);
      }
    }
    pts.offset.push_back(static_cast<std::uint32_t>(pts.q.size()));
  }
  return pts;
}

struct IntegralSetup {
  std::vector<std::int64_t> p_list;  // primes p <= N
  std::vector<FixedReal> w0;         // per p
  std::vector<std::vector<FixedReal>> w1;  // per p, per coordinate
  std::vector<std::int64_t> r_list;  // primes r <= floor(bN)
  std::vector<FixedReal> kappa;
  std::vector<ResiduePoints> points;
};

IntegralSetup make_setup(const FixedReal& b, const ApproxConfig& cfg, std::int64_t N,
                         const ArithTable& table) {
  IntegralSetup s;
  const int d = cfg.d();
  if (N < 2) return s;
  if (N > table.limit()) throw RangeError("N exceeds the arithmetic table limit");
  const i128 rmax = (b * N).floor();
  require_table(table, rmax, "integral_FN_exact");
  s.p_list = table.primes_between(2, N);
  for (const auto& ci : cfg.c.c) s.kappa.push_back(FixedReal::from_int(1) / ci);
  for (std::int64_t p : s.p_list) {
    const double radius = cfg.radius(static_cast<double>(p));
    if (!(radius < 1.0)) throw ContractError("approximation radius must stay below 1");
    s.w0.push_back(FixedReal::from_double(radius));
    std::vector<FixedReal> w1;
    for (int i = 0; i < d; ++i) w1.push_back(s.w0.back() * s.kappa[i]);
    s.w1.push_back(std::move(w1));
  }
  if (rmax >= 2) s.r_list = table.primes_between(2, static_cast<std::int64_t>(rmax));
  const FixedReal w0max = *std::max_element(s.w0.begin(), s.w0.end());
  for (int i = 0; i < d; ++i) {
    s.points.push_back(build_points(s.r_list, cfg.c.c[i], s.kappa[i], w0max));
  }
  return s;
}

// Index range [first, last) of primes in r_list within [lo, hi].
std::pair<std::size_t, std::size_t> prime_index_range(const std::vector<std::int64_t>& primes,
                                                      i128 lo, i128 hi) {
  const auto first = std::lower_bound(primes.begin(), primes.end(), lo,
                                      [](std::int64_t x, i128 v) { return x < v; });
  const auto last = std::upper_bound(primes.begin(), primes.end(), hi,
                                     [](i128 v, std::int64_t x) { return v < x; });
  if (last <= first) return {0, 0};
  return {static_cast<std::size_t>(first - primes.begin()),
          static_cast<std::size_t>(last - primes.begin())};
}

struct RContribution {
  FixedReal length;
  std::int64_t intervals = 0;
};

// Measure of [r, r + W0) ∩ [ap, bp] ∩ (the q boxes), over all q choices.
// Coordinates are relative to r.
RContribution direct_r(const IntegralSetup& s, std::size_t pi, std::size_t ri,
                       const FixedReal& lo0, const FixedReal& hi0) {
  RContribution out;
  const int d = static_cast<int>(s.points.size());
  std::vector<FixedReal> lo(d + 1), hi(d + 1);
  lo[0] = lo0;
  hi[0] = hi0;
  if (!(lo0 < hi0)) return out;
  // Depth-first over coordinates with the running intersection.
  std::vector<std::uint32_t> cursor(d);
  auto recurse = [&](auto&& self, int i) -> void {
    if (i == d) {
      out.length += hi[d] - lo[d];
      ++out.intervals;
      return;
    }
    const ResiduePoints& pts = s.points[i];
    const FixedReal& w1 = s.w1[pi][i];
    for (std::uint32_t k = pts.offset[ri]; k < pts.offset[ri + 1]; ++k) {
      const FixedReal& delta = pts.delta[k];
      lo[i + 1] = std::max(lo[i], delta);
      hi[i + 1] = std::min(hi[i], delta + w1);
      if (lo[i + 1] < hi[i + 1]) self(self, i + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

RContribution boundary_r(const IntegralSetup& s, std::size_t pi, std::size_t ri,
                         const FixedReal& ap, const FixedReal& bp) {
  const FixedReal r = FixedReal::from_int(s.r_list[ri]);
  const FixedReal lo = std::max(FixedReal(), ap - r);
  const FixedReal hi = std::min(s.w0[pi], bp - r);
  return direct_r(s, pi, ri, lo, hi);
}

IntegralResult integral_direct(const FixedReal& a, const FixedReal& b, const IntegralSetup& s) {
  std::vector<IntegralTerm> terms(s.p_list.size());
  parallel_for_chunks(s.p_list.size(), [&](std::size_t pi) {
    const std::int64_t p = s.p_list[pi];
    const FixedReal ap = a * p;
    const FixedReal bp = b * p;
    const auto [first, last] = prime_index_range(s.r_list, ap.floor(), bp.floor());
    FixedReal total;
    std::int64_t n = 0;
    for (std::size_t ri = first; ri < last; ++ri) {
      const RContribution c = boundary_r(s, pi, ri, ap, bp);
      total += c.length;
      n += c.intervals;
    }
    terms[pi] = {p, total, n};
  });
  IntegralResult out;
  for (const IntegralTerm& t : terms) {
    if (t.intervals > 0) out.terms.push_back(t);
    out.intervals += t.intervals;
  }
  return out;
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : count_(n + 1, 0), sum_(n + 1) {}
  void add(std::size_t i, const FixedReal& v) {
    for (++i; i < count_.size(); i += i & (~i + 1)) {
      ++count_[i];
      sum_[i] += v;
    }
  }
  // Totals over indices [0, i).
  std::pair<std::int64_t, FixedReal> prefix(std::size_t i) const {
    std::int64_t c = 0;
    FixedReal s;
    for (; i > 0; i -= i & (~i + 1)) {
      c += count_[i];
      s += sum_[i];
    }
    return {c, s};
  }

 private:
  std::vector<std::int64_t> count_;
  std::vector<FixedReal> sum_;
};

// d = 1: for fixed p the overlap of [r, r + W0) and [r + delta, r + delta + W1)
// is the trapezoid max(0, min(delta + W1, W0 - delta, W0, W1)) in delta, so
// the inner primes contribute through counts and delta-sums over four
// delta thresholds, answered offline with a Fenwick tree indexed by r.
IntegralResult integral_sweep(const FixedReal& a, const FixedReal& b, const IntegralSetup& s) {
  const ResiduePoints& pts = s.points[0];
  const std::size_t np = s.p_list.size();
  std::vector<std::uint32_t> owner(pts.q.size());
  for (std::size_t ri = 0; ri + 1 < pts.offset.size(); ++ri) {
    for (std::uint32_t k = pts.offset[ri]; k < pts.offset[ri + 1]; ++k) {
      owner[k] = static_cast<std::uint32_t>(ri);
    }
  }
  std::vector<std::uint32_t> order(pts.q.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t x, std::uint32_t y) { return pts.delta[x] < pts.delta[y]; });

  struct Query {
    FixedReal x;
    std::uint32_t id;  // 4 * p index + threshold index
  };
  std::vector<Query> queries;
  queries.reserve(4 * np);
  std::vector<std::pair<std::size_t, std::size_t>> inner(np);
  std::vector<FixedReal> width(np);
  for (std::size_t pi = 0; pi < np; ++pi) {
    const std::int64_t p = s.p_list[pi];
    const FixedReal& w0 = s.w0[pi];
    const FixedReal& w1 = s.w1[pi][0];
    const FixedReal m = std::min(w0, w1);
    width[pi] = m;
    const FixedReal ap = a * p;
    inner[pi] = prime_index_range(s.r_list, ceil_of(ap), (b * p - w0).floor());
    const FixedReal xs[4] = {-w1, m - w1, w0 - m, w0};
    for (std::uint32_t k = 0; k < 4; ++k) {
      queries.push_back({xs[k], static_cast<std::uint32_t>(4 * pi + k)});
    }
  }
  std::sort(queries.begin(), queries.end(), [](const Query& x, const Query& y) {
    return x.x < y.x || (x.x == y.x && x.id < y.id);
  });

  std::vector<std::pair<std::int64_t, FixedReal>> answer(4 * np);
  Fenwick tree(s.r_list.size());
  std::size_t next = 0;
  for (const Query& query : queries) {
    while (next < order.size() && pts.delta[order[next]] <= query.x) {
      tree.add(owner[order[next]], pts.delta[order[next]]);
      ++next;
    }
    const auto [first, last] = inner[query.id / 4];
    const auto hi = tree.prefix(last);
    const auto lo = tree.prefix(first);
    answer[query.id] = {hi.first - lo.first, hi.second - lo.second};
  }

  IntegralResult out;
  for (std::size_t pi = 0; pi < np; ++pi) {
    const std::int64_t p = s.p_list[pi];
    const FixedReal& w0 = s.w0[pi];
    const FixedReal& w1 = s.w1[pi][0];
    const auto& q0 = answer[4 * pi];
    const auto& q1 = answer[4 * pi + 1];
    const auto& q2 = answer[4 * pi + 2];
    const auto& q3 = answer[4 * pi + 3];
    const std::int64_t c1 = q1.first - q0.first;
    const std::int64_t c2 = q2.first - q1.first;
    const std::int64_t c3 = q3.first - q2.first;
    FixedReal total = (q1.second - q0.second) + w1 * c1;
    total += width[pi] * c2;
    total += w0 * c3 - (q3.second - q2.second);
    std::int64_t intervals = c1 + c2 + c3;

    // Primes whose window [r, r + W0) sticks out of [ap, bp].
    const FixedReal ap = a * p;
    const FixedReal bp = b * p;
    const auto [first, last] = prime_index_range(s.r_list, ap.floor(), bp.floor());
    auto edge = [&](std::size_t from, std::size_t to) {
      for (std::size_t ri = from; ri < to; ++ri) {
        const RContribution c = boundary_r(s, pi, ri, ap, bp);
        total += c.length;
        intervals += c.intervals;
      }
    };
    const auto [in_first, in_last] = inner[pi];
    if (in_first == in_last) {
      edge(first, last);
    } else {
      edge(first, std::min(last, in_first));
      edge(std::max(first, in_last), last);
    }
    if (intervals > 0) out.terms.push_back({p, total, intervals});
    out.intervals += intervals;
  }
  return out;
}

}  // namespace

IntegralResult integral_FN_exact(const FixedReal& a, const FixedReal& b,
                                 const ApproxConfig& cfg, std::int64_t N,
                                 const ArithTable& table, IntegralMethod method) {
  if (!(a < b)) throw RangeError("integral_FN_exact requires a < b");
  if (a < cfg.A || cfg.B < b) throw RangeError("integral_FN_exact requires A <= a < b <= B");
  const IntegralSetup setup = make_setup(b, cfg, N, table);
  if (setup.p_list.empty()) return {};
  if (method == IntegralMethod::automatic) {
    method = cfg.d() == 1 ? IntegralMethod::sweep : IntegralMethod::direct;
  }
  if (method == IntegralMethod::sweep) {
    if (cfg.d() != 1) throw ContractError("the sweep integral handles d = 1 only");
    return integral_sweep(a, b, setup);
  }
  return integral_direct(a, b, setup);
}

namespace {

double G_N_with(const ApproxConfig& cfg, std::int64_t N, double cap) {
  if (N < 2) throw RangeError("G_N requires N >= 2");
  const int d = cfg.d();
  double m = cap;
  for (const auto& ci : cfg.c.c) m = std::min(m, ci.to_double());
  const double A = cfg.A.to_double();
  const double B = cfg.B.to_double();
  const double n = static_cast<double>(N);
  const double logn = std::log(n);
  return (A * A) / (B * B) * std::pow(m, d - 1) / std::ldexp(1.0, d + 1) *
         std::pow(n, 1.0 - (d + 1) * (cfg.gamma() - cfg.epsilon)) / (logn * logn);
}

}  // namespace

double G_N_value(const ApproxConfig& cfg, std::int64_t N) {
  return G_N_with(cfg, N, static_cast<double>(cfg.d()));
}

double G_N_variant(const ApproxConfig& cfg, std::int64_t N) { return G_N_with(cfg, N, 2.0); }

WindowParams WindowParams::make(std::int64_t P, const FixedReal& a, const FixedReal& b,
                                const ApproxConfig& cfg) {
  if (P < 1) throw RangeError("window base P must be positive");
  if (!(FixedReal() < a) || !(a < b)) throw RangeError("window needs 0 < a < b");
  WindowParams wp;
  wp.P = P;
  wp.a = a;
  wp.b = b;
  const double ad = a.to_double();
  const double bd = b.to_double();
  wp.mu_window = (ad + bd) / (2.0 * ad);
  const double muP = wp.mu_window * static_cast<double>(P);
  wp.eta = std::pow(muP, cfg.epsilon - cfg.gamma());
  double min_c = cfg.c.min_entry().to_double();
  wp.delta = min_c * wp.eta / 2.0;
  double m = 0.5;
  for (const auto& ci : cfg.c.c) m = std::min(m, 1.0 / ci.to_double());
  wp.nu = wp.eta / muP * m;
  return wp;
}

WindowCounts window_counts(const WindowParams& wp, const ApproxConfig& cfg,
                           const ArithTable& table, SumOrder order) {
  WindowCounts out;
  const int d = cfg.d();
  // P a mu = P (a + b) / 2.
  const FixedReal twice_lo = (wp.a + wp.b) * wp.P;
  const i128 f = twice_lo.floor();
  const i128 n_lo = twice_lo.is_integer() ? (f + 1) / 2 : f / 2 + 1;
  const i128 n_hi = (wp.b * wp.P).floor();
  require_table(table, n_hi, "window_counts");
  out.n_lo = static_cast<std::int64_t>(n_lo);
  out.n_hi = static_cast<std::int64_t>(n_hi);
  const FixedReal delta = FixedReal::from_double(wp.delta);

  auto factor = [&](std::int64_t n) {
    std::int64_t prod = 1;
    for (int i = 0; i < d && prod != 0; ++i) {
      const FixedReal y = cfg.c.c[i] * n;
      prod *= static_cast<std::int64_t>(ceil_of(y + delta) - ceil_of(y));
    }
    return prod;
  };

  std::vector<std::int64_t> per_base(static_cast<std::size_t>(std::max<i128>(n_hi, 1)) + 1, 0);
  auto visit = [&](std::int64_t n) {
    const std::int64_t base = table.prime_power_base(n);
    if (base == 0) return;
    const std::int64_t w = factor(n);
    per_base[base] += w;
    if (base == n) out.S_P += w;
  };
  if (n_lo <= n_hi) {
    if (order == SumOrder::ascending) {
      for (std::int64_t n = out.n_lo; n <= out.n_hi; ++n) visit(n);
    } else {
      for (std::int64_t n = out.n_hi; n >= out.n_lo; --n) visit(n);
    }
  }
  for (std::size_t p = 2; p < per_base.size(); ++p) {
    if (per_base[p] != 0) out.T_P += std::log(static_cast<double>(p)) * per_base[p];
  }

  // R(P) = #{primes P <= p < mu P}; p < mu P  <=>  2 a p < (a + b) P.
  const FixedReal two_a = wp.a * 2;
  const i128 upper = (twice_lo / two_a).floor() + 1;
  require_table(table, upper, "window_counts");
  for (std::int64_t p = wp.P; p <= static_cast<std::int64_t>(upper); ++p) {
    if (p >= 2 && table.is_prime(p) && two_a * p < twice_lo) ++out.R_P;
  }
  out.N_P = out.R_P * out.S_P;
  return out;
}

std::vector<std::pair<std::int64_t, i128>> product_set_A(const FixedReal& alpha,
                                                         const ApproxConfig& cfg,
                                                         std::int64_t N,
                                                         std::optional<double> mu) {
  if (N < 0) throw RangeError("N must be nonnegative");
  const double m = mu ? *mu : std::pow(static_cast<double>(N), cfg.epsilon - cfg.gamma());
  std::vector<Phase> beta;
  for (const auto& ci : cfg.c.c) beta.push_back(phase_of(ci * alpha));
  std::vector<std::pair<std::int64_t, i128>> out;
  FixedReal y;
  for (std::int64_t n = 1; n <= N; ++n) {
    y += alpha;
    if (!phase_below(phase_of(y), m)) continue;
    bool ok = true;
    for (std::size_t i = 0; i < beta.size() && ok; ++i) {
      ok = phase_below(phase_mul(beta[i], n), m);
    }
    if (!ok) continue;
    i128 v;
    if (__builtin_mul_overflow(static_cast<i128>(n), y.floor(), &v)) {
      throw ResourceError("n [n alpha] overflows");
    }
    out.emplace_back(n, v);
  }
  return out;
}

SieveSideParams SieveSideParams::make(std::int64_t N, const ApproxConfig& cfg) {
  if (N < 1) throw RangeError("sieve-side N must be positive");
  SieveSideParams sp;
  sp.N = N;
  const double n = static_cast<double>(N);
  sp.mu_target = std::pow(n, cfg.epsilon - cfg.gamma());
  sp.Q = std::pow(n, cfg.epsilon);
  sp.L = sp.Q * sp.Q * sp.Q / sp.mu_target;
  return sp;
}

std::int64_t SieveSideParams::L_int() const { return static_cast<std::int64_t>(std::floor(L)); }

namespace {

void check_sieve_params(const SieveSideParams& sp) {
  if (sp.t1 < 1 || sp.t2 < 1) throw ContractError("t1 and t2 must be positive");
  if (static_cast<double>(sp.t1) * static_cast<double>(sp.t2) > sp.Q) {
    throw ContractError("sieve-side counts need t1 t2 <= Q");
  }
  if (sp.N / sp.t1 < 1) throw ContractError("sieve-side counts need N / t1 >= 1");
}

// Sum over 0 != (m_0..m_d) in [-L, L]^{d+1} of g(theta_m), theta_m the phase of
// alpha t1 (m_0 / t2 + sum m_i c_i).
double frequency_box_sum(const FixedReal& alpha, const SieveSideParams& sp,
                         const ApproxConfig& cfg, const SieveOptions& options,
                         const std::function<double(Phase)>& g) {
  const int d = cfg.d();
  const std::int64_t L = std::max<std::int64_t>(sp.L_int(), 0);
  const double side = 2.0 * static_cast<double>(L) + 1.0;
  if (std::pow(side, d + 1) > options.max_terms) {
    throw ResourceError("E(alpha; t1, t2) enumeration (2L+1)^{d+1} = " +
                        std::to_string(std::pow(side, d + 1)) + " exceeds cap");
  }
  const Phase z = phase_of((alpha * sp.t1) / sp.t2);
  std::vector<Phase> a0;
  for (std::int64_t m0 = -L; m0 <= L; ++m0) a0.push_back(phase_mul(z, m0));
  std::vector<Phase> g_i;
  for (const auto& ci : cfg.c.c) g_i.push_back(phase_mul(phase_of(ci * alpha), sp.t1));

  double total = 0.0;
  std::vector<std::int64_t> m(d, -L);
  for (;;) {
    Phase b = 0;
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      b += phase_mul(g_i[i], m[i]);
      zero = zero && m[i] == 0;
    }
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(a0.size()); ++k) {
      if (zero && k == L) continue;
      total += g(a0[k] + b);
    }
    int pos = d - 1;
    while (pos >= 0 && m[pos] == L) m[pos--] = -L;
    if (pos < 0) break;
    ++m[pos];
  }
  return total;
}

}  // namespace

SieveSideCounts sieve_side_counts(const FixedReal& alpha, const SieveSideParams& sp,
                                  const ApproxConfig& cfg, const SieveOptions& options) {
  check_sieve_params(sp);
  const int d = cfg.d();
  const double mu = sp.mu_target;
  SieveSideCounts out;
  const std::int64_t n_max = sp.N / sp.t1;
  std::vector<Phase> g_i;
  for (const auto& ci : cfg.c.c) g_i.push_back(phase_of(ci * alpha));
  const FixedReal step = alpha * sp.t1;
  FixedReal y;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    y += step;
    // {y / t2} < mu / t2  <=>  (floor(y) mod t2) + {y} < mu.
    const i128 residue = y.floor() % sp.t2;
    if (!FixedReal(residue, y.frac_bits()).less_than(mu)) continue;
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      ok = phase_below(phase_mul(g_i[i], n * sp.t1), mu);
    }
    if (ok) ++out.S_exact;
  }
  const double scale = std::pow(mu, d + 1);
  out.main_term = static_cast<double>(sp.N) * scale / static_cast<double>(sp.t1 * sp.t2);
  out.E_bound = sieve_side_E_bound(alpha, sp, cfg, options);
  return out;
}

double sieve_side_E_bound(const FixedReal& alpha, const SieveSideParams& sp,
                          const ApproxConfig& cfg, const SieveOptions& options) {
  check_sieve_params(sp);
  const double cap = static_cast<double>(sp.N) / static_cast<double>(sp.t1);
  return std::pow(sp.mu_target, cfg.d() + 1) / static_cast<double>(sp.t2) *
         frequency_box_sum(alpha, sp, cfg, options,
                           [cap](Phase t) { return min_reciprocal(cap, t); });
}

double sieve_side_E_raw(const FixedReal& alpha, const SieveSideParams& sp,
                        const ApproxConfig& cfg, const SieveOptions& options) {
  check_sieve_params(sp);
  const std::int64_t length = sp.N / sp.t1;
  return std::pow(sp.mu_target, cfg.d() + 1) / static_cast<double>(sp.t2) *
         frequency_box_sum(alpha, sp, cfg, options,
                           [length](Phase t) { return geometric_magnitude(length, t); });
}

std::vector<std::pair<std::int64_t, std::int64_t>> divisor_pairs(double Q) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (!(Q >= 1.0)) return out;
  const std::int64_t q = static_cast<std::int64_t>(std::floor(Q));
  for (std::int64_t t1 = 1; t1 <= q; ++t1) {
    for (std::int64_t t2 = 1; t1 * t2 <= q; ++t2) out.emplace_back(t1, t2);
  }
  return out;
}

double J_N_alpha(const FixedReal& alpha, const SieveSideParams& sp, const ApproxConfig& cfg,
                 const SieveOptions& options) {
  const int d = cfg.d();
  const double base = static_cast<double>(sp.N) * std::pow(sp.mu_target, d) / sp.L;
  double total = 0.0;
  for (const auto& [t1, t2] : divisor_pairs(sp.Q)) {
    SieveSideParams local = sp;
    local.t1 = t1;
    local.t2 = t2;
    if (sp.N / t1 < 1) continue;
    const double weight = std::pow(static_cast<double>(t1 * t2), cfg.epsilon);
    total += weight * (base + sieve_side_E_bound(alpha, local, cfg, options));
  }
  return total;
}

}  // namespace dioph
