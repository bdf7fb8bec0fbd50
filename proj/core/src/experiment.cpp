#include "dioph/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dioph/error.hpp"
#include "dioph/fourier.hpp"
#include "dioph/vaughan.hpp"

namespace dioph {

double AuditRow::param(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  throw ContractError("audit row " + label + " has no parameter " + key);
}

AuditRow make_row(std::string label, double exact, double bound,
                  std::vector<std::pair<std::string, double>> params) {
  AuditRow row{std::move(label), exact, bound, 0.0, std::move(params)};
  row.ratio = bound > 0.0 ? exact / bound : 0.0;
  return row;
}

std::vector<std::int64_t> geometric_grid(std::int64_t base, int lo, int hi) {
  std::vector<std::int64_t> out;
  std::int64_t v = 1;
  for (int e = 0; e <= hi; ++e) {
    if (e >= lo) out.push_back(v);
    v *= base;
  }
  return out;
}

namespace {

void require_ascending(const std::vector<std::int64_t>& grid) {
  if (grid.empty()) throw ContractError("N grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw ContractError("N grid must be strictly ascending");
  }
}

std::size_t top_half_start(std::size_t n) { return n / 2; }

}  // namespace

TheoremIReport theorem_i_check(const FixedReal& a, const FixedReal& b,
                               const std::vector<std::int64_t>& N_grid,
                               const ApproxConfig& cfg, const ArithTable& table) {
  require_ascending(N_grid);
  TheoremIReport report{a, b, {}, true};
  const IntegralResult full = integral_FN_exact(a, b, cfg, N_grid.back(), table);
  const double width = (b - a).to_double();
  std::size_t used = 0;
  IntegralResult prefix;
  for (std::int64_t N : N_grid) {
    while (used < full.terms.size() && full.terms[used].p <= N) {
      prefix.terms.push_back(full.terms[used]);
      prefix.intervals += full.terms[used].intervals;
      ++used;
    }
    TheoremIRow row;
    row.N = N;
    row.integral = prefix.value();
    row.intervals = prefix.intervals;
    if (N >= 2) {
      row.G_N = G_N_value(cfg, N);
      row.G_N_variant = G_N_variant(cfg, N);
      row.ratio = static_cast<double>(row.integral) / (width * row.G_N);
    }
    report.rows.push_back(row);
  }
  for (std::size_t i = top_half_start(report.rows.size()) + 1; i < report.rows.size(); ++i) {
    if (report.rows[i].ratio < report.rows[i - 1].ratio) report.top_half_nondecreasing = false;
  }
  return report;
}

std::vector<FixedReal> kronecker_samples(const FixedReal& A, const FixedReal& B,
                                         std::int64_t count, std::uint64_t seed) {
  // splitmix64 of the seed gives the starting offset.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  const Phase step = phase_of(FixedReal::named_constant("phi"));
  Phase t = static_cast<Phase>(z) << 64;
  const FixedReal width = B - A;
  std::vector<FixedReal> out;
  for (std::int64_t j = 0; j < count; ++j, t += step) out.push_back(A + width * FixedReal(0, t));
  return out;
}

TheoremIIReport theorem_ii_check(const std::vector<std::int64_t>& N_grid,
                                 const ApproxConfig& cfg, std::int64_t sample_count,
                                 std::uint64_t seed, const ArithTable& table,
                                 const SieveOptions& options) {
  require_ascending(N_grid);
  if (sample_count < 10) throw ContractError("theorem_ii_check needs at least 10 samples");
  TheoremIIReport report;
  report.samples = kronecker_samples(cfg.A, cfg.B, sample_count, seed);
  const double width = (cfg.B - cfg.A).to_double();
  for (std::int64_t N : N_grid) {
    if (N < 2) throw RangeError("theorem_ii_check needs N >= 2");
    const SolutionCounter counter(cfg, N, table);
    const SieveSideParams sp = SieveSideParams::make(N, cfg);
    TheoremIIRow row;
    row.N = N;
    row.G_N = G_N_value(cfg, N);
    double sum_J = 0.0;
    double sum_F = 0.0;
    for (const FixedReal& alpha : report.samples) {
      const double F = static_cast<double>(counter.count_only(alpha));
      const double J = J_N_alpha(alpha, sp, cfg, options);
      row.K_est = std::max(row.K_est, std::max(0.0, (F - J) / row.G_N));
      sum_J += std::fabs(J);
      sum_F += F;
    }
    row.V_N = width * sum_J / static_cast<double>(sample_count);
    row.V_over_G = row.V_N / row.G_N;
    row.mean_F = sum_F / static_cast<double>(sample_count);
    report.K_est = std::max(report.K_est, row.K_est);
    report.rows.push_back(row);
  }
  for (std::size_t i = top_half_start(report.rows.size()) + 1; i < report.rows.size(); ++i) {
    if (!(report.rows[i].V_over_G < report.rows[i - 1].V_over_G)) {
      report.top_half_V_over_G_decreasing = false;
    }
  }
  return report;
}

LimsupTrack limsup_track(const FixedReal& alpha, const ApproxConfig& cfg,
                         const std::vector<std::int64_t>& N_grid, const ArithTable& table) {
  require_ascending(N_grid);
  const CountResult all = count_FN(alpha, cfg, N_grid.back(), table);
  LimsupTrack track;
  std::size_t used = 0;
  double best = 0.0;
  for (std::int64_t N : N_grid) {
    while (used < all.tuples.size() && all.tuples[used].p <= N) ++used;
    const double G = N >= 2 ? G_N_value(cfg, N) : 0.0;
    const double ratio = G > 0.0 ? static_cast<double>(used) / G : 0.0;
    best = std::max(best, ratio);
    track.N.push_back(N);
    track.F.push_back(static_cast<std::int64_t>(used));
    track.ratio.push_back(ratio);
    track.running_max.push_back(best);
  }
  return track;
}

namespace {

std::int64_t ceil_div(std::int64_t x, std::int64_t l) { return (x + l - 1) / l; }

}  // namespace

std::vector<AuditRow> bound_audit(std::int64_t P, const ApproxConfig& cfg,
                                  const ArithTable& table, const AuditOptions& options) {
  const int d = cfg.d();
  const double k = cfg.c.k;
  const double Pd = static_cast<double>(P);
  const WindowParams wp = WindowParams::make(P, cfg.A, cfg.B, cfg);
  const WindowCounts window = window_counts(wp, cfg, table);
  const std::int64_t n_lo = window.n_lo;
  const std::int64_t n_hi = window.n_hi;
  if (n_lo > n_hi) throw RangeError("bound_audit: empty summation window");

  const std::int64_t J =
      options.J ? *options.J
                : std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                                std::floor(std::pow(Pd, 1.0 / (3.0 * k + 2.0)))));
  const double u = options.u ? *options.u : std::pow(Pd, 0.4);
  if (!(u >= 1.0)) throw ConfigError("bound_audit needs u >= 1");
  const std::int64_t U = static_cast<std::int64_t>(std::floor(u));
  const std::int64_t l1_max = static_cast<std::int64_t>(std::floor(u * u));
  const double log2P = std::log(2.0 * Pd);
  const double terms = std::pow(2.0 * J, d) * static_cast<double>(n_hi) * std::log(2.0 + n_hi);
  if (terms > options.max_terms) {
    throw ResourceError("bound_audit enumeration (2J)^d bP log(bP) exceeds cap");
  }

  std::vector<Phase> phases;
  for (const auto& ci : cfg.c.c) phases.push_back(phase_of(ci));
  const std::vector<std::pair<std::string, double>> base{{"P", Pd}, {"J", static_cast<double>(J)},
                                                         {"u", u}};
  auto with = [&](std::vector<std::pair<std::string, double>> extra) {
    auto all = base;
    all.insert(all.end(), extra.begin(), extra.end());
    return all;
  };
  const double e1 = 1.0 - 1.0 / (k + 1.0);
  const double e2 = 1.0 - 1.0 / (2.0 * (k + 1.0));
  const double e3 = 0.5 - 1.0 / (2.0 * (k + 1.0));
  const double Jd = static_cast<double>(J);

  // Exponential sums over the window.
  const PrimePowers window_pp = prime_powers_between(table, n_lo, n_hi);
  const double U_tilde = weighted_frequency_sum(
      J, phases, [&](Phase t) { return std::abs(lambda_exp_sum(window_pp, t)); });

  const double Z1 = weighted_frequency_sum(J, phases, [&](Phase t) {
    double total = 0.0;
    for (std::int64_t l = 1; l <= l1_max; ++l) {
      const Phase lt = phase_mul(t, l);
      std::complex<double> suffix = 0.0;
      double best = 0.0;
      for (std::int64_t m = n_hi / l; m >= ceil_div(n_lo, l); --m) {
        suffix += unit_root(phase_mul(lt, m));
        best = std::max(best, std::abs(suffix));
      }
      total += best;
    }
    return total;
  });
  const double Z1H = weighted_frequency_sum(J, phases, [&](Phase t) {
    double total = 0.0;
    for (std::int64_t l = 1; l <= l1_max; ++l) {
      total += min_reciprocal(Pd / static_cast<double>(l), phase_mul(t, l));
    }
    return total;
  });

  const std::int64_t l_top = n_hi / std::max<std::int64_t>(U, 1);
  const std::vector<int> b = b_coeff_table(table, std::max<std::int64_t>(l_top, 1), u);
  const double Z2 = weighted_frequency_sum(J, phases, [&](Phase t) {
    std::complex<double> total = 0.0;
    for (std::int64_t m = U + 1; m <= l_top; ++m) {
      const double lam = table.von_mangoldt(m);
      if (lam == 0.0) continue;
      const Phase mt = phase_mul(t, m);
      std::complex<double> inner = 0.0;
      const std::int64_t l_lo = std::max<std::int64_t>(
          static_cast<std::int64_t>(std::ceil(u)), ceil_div(n_lo, m));
      for (std::int64_t l = l_lo; l <= n_hi / m; ++l) {
        if (b[l] != 0) inner += static_cast<double>(b[l]) * unit_root(phase_mul(mt, l));
      }
      total += lam * inner;
    }
    return std::abs(total);
  });

  // Z2(L) over the dyadic L = u 2^t <= bP/u.
  double Z2L_max = 0.0;
  AuditRow worst_L = make_row("Z2(L)", 0.0, 0.0, base);
  const double Z2L_log = std::pow(log2P, 1.5 * d + 2.5);
  for (double L = u; L <= static_cast<double>(n_hi) / u; L *= 2.0) {
    const std::int64_t l_lo = static_cast<std::int64_t>(std::ceil(L));
    const std::int64_t l_hi = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(2.0 * L)),
                                                     static_cast<std::int64_t>(b.size()) - 1);
    const double value = weighted_frequency_sum(J, phases, [&](Phase t) {
      double total = 0.0;
      for (std::int64_t l = l_lo; l <= l_hi; ++l) {
        if (b[l] == 0) continue;
        const Phase lt = phase_mul(t, l);
        std::complex<double> inner = 0.0;
        const std::int64_t m_lo = std::max<std::int64_t>(U + 1, ceil_div(n_lo, l));
        for (std::int64_t m = m_lo; m <= n_hi / l; ++m) {
          const double lam = table.von_mangoldt(m);
          if (lam != 0.0) inner += lam * unit_root(phase_mul(lt, m));
        }
        total += std::abs(static_cast<double>(b[l])) * std::abs(inner);
      }
      return total;
    });
    const double bound = Z2L_log * (std::sqrt(Pd * L) + Pd / std::sqrt(L) +
                                    std::pow(Pd, e2) * std::pow(Jd, e3));
    Z2L_max = std::max(Z2L_max, value);
    AuditRow row = make_row("Z2(L)", value, bound, with({{"L", L}}));
    if (worst_L.bound == 0.0 || row.ratio > worst_L.ratio) worst_L = row;
  }

  const RABound RA = R_A_dyadic_bound(std::max<std::int64_t>(l1_max, 1), Pd, J, cfg.c);

  double V_tilde = 0.0;
  for (const Phase t : phases) {
    for (std::int64_t j = 1; j <= J; ++j) {
      V_tilde += min_reciprocal(Pd / static_cast<double>(j), phase_mul(t, j));
    }
  }

  // One pass over n for T_A, U_A, V_A and the subset expansion of T(P).
  const VaalerPolynomial poly(static_cast<int>(J));
  const FixedReal delta = FixedReal::from_double(wp.delta);
  const std::size_t subsets = std::size_t{1} << d;
  std::vector<double> T_sub(subsets, 0.0);
  double U_A = 0.0;
  double tau_total = 0.0;
  std::vector<double> psi_diff(d), star_diff(d);
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    for (int i = 0; i < d; ++i) {
      const FixedReal x0 = cfg.c.c[i] * n;
      const Phase t0 = -phase_of(x0);
      const Phase t1 = -phase_of(x0 + delta);
      const PsiTau e0 = poly.evaluate(t0);
      const PsiTau e1 = poly.evaluate(t1);
      psi_diff[i] = sawtooth_psi_phase(t1) - sawtooth_psi_phase(t0);
      star_diff[i] = e1.psi_star - e0.psi_star;
      tau_total += e0.tau + e1.tau;
    }
    const double lam = table.von_mangoldt(n);
    if (lam == 0.0) continue;
    double star = lam;
    for (int i = 0; i < d; ++i) star *= star_diff[i];
    U_A += star;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      double v = lam;
      for (int i = 0; i < d; ++i) {
        if (mask >> i & 1) v *= psi_diff[i];
      }
      T_sub[mask] += v;
    }
  }
  const double T_A = T_sub[subsets - 1];
  const double V_A = log2P * tau_total;
  double expansion = 0.0;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    const int h = __builtin_popcountll(mask);
    expansion += std::pow(wp.delta, d - h) * T_sub[mask];
  }

  const double Peps = std::pow(Pd, cfg.epsilon);
  std::vector<AuditRow> rows;
  rows.push_back(make_row("U_A", std::fabs(U_A), U_tilde, base));
  rows.push_back(make_row("U_tilde:ZH", U_tilde, log2P * Z1 + Z2, base));
  rows.push_back(make_row("Z1:Z1H", Z1, Z1H, base));
  rows.push_back(make_row("Z1", Z1, std::pow(log2P, d + 1) * (u * u + std::pow(Pd * Jd, e1)), base));
  rows.push_back(make_row("Z2:Z2(L)", Z2, log2P * Z2L_max, base));
  rows.push_back(worst_L);
  rows.push_back(make_row("Z2", Z2,
                          std::pow(log2P, 1.5 * d + 3.5) *
                              (Pd / std::sqrt(u) + std::pow(Pd, e2) * std::pow(Jd, e3)),
                          base));
  rows.push_back(make_row("R_A", RA.exact, RA.bound,
                          with({{"M", static_cast<double>(std::max<std::int64_t>(l1_max, 1))}})));
  rows.push_back(make_row("U_tilde", U_tilde,
                          Peps * (std::pow(Pd, 0.8) + std::pow(Pd * Jd, e1) +
                                  std::pow(Pd, e2) * std::pow(Jd, e3)),
                          base));
  rows.push_back(make_row("V_tilde", V_tilde, log2P * (Jd + std::pow(Pd, e1)), base));
  rows.push_back(make_row("V_A", V_A, log2P * (Pd / Jd + Jd + std::pow(Pd, e1)), base));
  rows.push_back(make_row("T_A-U_A", std::fabs(T_A - U_A), V_A, base));
  rows.push_back(make_row("T(P):expansion", window.T_P, expansion, base));
  rows.push_back(make_row("T_A", std::fabs(T_A),
                          std::pow(Pd, 1.0 - 1.0 / (3.0 * k + 2.0) + cfg.epsilon), base));
  return rows;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double simpson_piece(const std::function<double(double)>& f, double a, double b, int panels,
                     double tol) {
  double total = 0.0;
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + i * h;
    const double x1 = i + 1 == panels ? b : x0 + h;
    const double xm = 0.5 * (x0 + x1);
    const double f0 = f(x0), fm = f(xm), f1 = f(x1);
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += adaptive_simpson(f, x0, x1, f0, fm, f1, whole, tol / panels, 40);
  }
  return total;
}

}  // namespace

QuadResult intlemma_quad(double A, double B, double K, double x, int resolution) {
  if (!(A < B)) throw RangeError("intlemma_quad requires A < B");
  if (!(K >= 2.0)) throw RangeError("intlemma_quad requires K >= 2");
  if (x == 0.0) throw RangeError("intlemma_quad requires x != 0");
  if (resolution < 1000) throw RangeError("intlemma_quad needs resolution >= 1000");
  const double ax = std::fabs(x);
  const double lo = ax * A;
  const double hi = ax * B;
  auto g = [K](double beta) {
    const double dist = std::fabs(beta - std::nearbyint(beta));
    return dist * K <= 1.0 ? K : 1.0 / dist;
  };
  // Kinks of beta -> min(K, 1/||beta||): n, n + 1/2 and n +- 1/K.
  std::vector<double> cuts{lo, hi};
  const double inv = 1.0 / K;
  for (double n = std::floor(lo) - 1.0; n <= std::ceil(hi) + 1.0; n += 1.0) {
    for (double c : {n, n + 0.5, n - inv, n + inv}) {
      if (c > lo && c < hi) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const int pieces = static_cast<int>(cuts.size()) - 1;
  const int panels = std::max(1, resolution / std::max(pieces, 1));
  double total = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    total += simpson_piece(g, a, b, panels, 1e-12 * K * (b - a));
  }
  QuadResult out;
  out.integral = total / ax;
  out.bound = std::min(K, std::max(1.0, 1.0 / ax)) * std::log(K);
  out.ratio = out.integral / out.bound;
  return out;
}

std::vector<AverageERow> average_E_check(const std::vector<std::int64_t>& N_grid,
                                         const ApproxConfig& cfg, std::int64_t samples,
                                         const SieveOptions& options) {
  require_ascending(N_grid);
  if (samples < 1) throw ContractError("average_E_check needs at least one sample");
  const int d = cfg.d();
  const FixedReal width = cfg.B - cfg.A;
  std::vector<FixedReal> alphas;
  for (std::int64_t j = 0; j < samples; ++j) {
    alphas.push_back(cfg.A + width * FixedReal::from_ratio(2 * j + 1, 2 * samples));
  }
  std::vector<AverageERow> rows;
  for (std::int64_t N : N_grid) {
    if (N < 2) throw RangeError("average_E_check needs N >= 2");
    const SieveSideParams sp = SieveSideParams::make(N, cfg);
    AverageERow row;
    row.N = N;
    for (const auto& [t1, t2] : divisor_pairs(sp.Q)) {
      SieveSideParams local = sp;
      local.t1 = t1;
      local.t2 = t2;
      double sum = 0.0;
      for (const FixedReal& alpha : alphas) sum += sieve_side_E_bound(alpha, local, cfg, options);
      row.lhs += std::pow(static_cast<double>(t1 * t2), cfg.epsilon) * width.to_double() * sum /
                 static_cast<double>(samples);
    }
    const double logN = std::log(static_cast<double>(N));
    row.target = static_cast<double>(N) * std::pow(sp.mu_target, d + 1) / (logN * logN);
    row.ratio = row.lhs / row.target;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dioph
