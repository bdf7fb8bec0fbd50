#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <tuple>

#include "dioph/counting.hpp"
#include "dioph/error.hpp"
#include "brute_force.hpp"
#include "oracle.hpp"

using namespace dioph;
using dioph::testing::floor_q;
using dioph::testing::frac_q;
using dioph::testing::random_real;
using dioph::testing::to_mpq;

namespace {

FixedReal R(const char* s) { return FixedReal::parse(s); }

ApproxConfig golden(double eps = 0.1) {
  ApproxConfig cfg;
  cfg.c = CVector::make({FixedReal::named_constant("phi")}, 1);
  cfg.epsilon = eps;
  cfg.A = R("1");
  cfg.B = R("2");
  cfg.validate();
  return cfg;
}

ApproxConfig plane() {
  ApproxConfig cfg;
  cfg.c = CVector::make({FixedReal::named_constant("sqrt2"), FixedReal::named_constant("sqrt3")}, 2);
  cfg.epsilon = 0.03;
  cfg.A = R("1");
  cfg.B = R("2");
  cfg.validate();
  return cfg;
}

const ArithTable& table() {
  static const ArithTable t = build_arith_table(2100000);
  return t;
}

}  // namespace

TEST(Counting, ConfigValidation) {
  ApproxConfig cfg = golden();
  EXPECT_DOUBLE_EQ(cfg.gamma(), 0.2);
  cfg.epsilon = 0.2;
  try {
    cfg.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("0 < ε < γ_{d,k}"), std::string::npos);
  }
  cfg = golden();
  cfg.B = R("0.5");
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Counting, NoPrimesBelowTwo) {
  EXPECT_EQ(count_FN(R("1.5"), golden(), 1, table()).count, 0);
  EXPECT_EQ(integral_FN_exact(R("1"), R("2"), golden(), 1, table()).value(), 0.0L);
}

TEST(Counting, MatchesBruteForceOracle) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    const ApproxConfig cfg = dioph::testing::random_config(rng);
    const FixedReal alpha = random_real(rng, 0, 3) + R("0.5");
    const std::int64_t N = 100 + static_cast<std::int64_t>(rng() % 1901);
    const CountResult got = count_FN(alpha, cfg, N, table());
    const auto expect = dioph::testing::brute_force(alpha, cfg, N);
    ASSERT_EQ(got.count, static_cast<std::int64_t>(expect.size())) << "instance " << i;
    for (std::size_t j = 0; j < expect.size(); ++j) {
      EXPECT_EQ(got.tuples[j].p, expect[j].p);
      EXPECT_EQ(got.tuples[j].r, expect[j].r);
      EXPECT_EQ(got.tuples[j].q, expect[j].q);
    }
  }
}

TEST(Counting, TuplesRevalidate) {
  // sqrt3 against c = (sqrt2, sqrt3) would make one product rational.
  for (const auto& [cfg, name] : {std::pair{golden(), "sqrt3"}, std::pair{plane(), "phi"}}) {
    const CountResult res = count_FN(FixedReal::named_constant(name), cfg, 200000, table());
    ASSERT_GT(res.count, 0);
    const mpq_class alpha = to_mpq(FixedReal::named_constant(name));
    for (const SolutionTuple& t : res.tuples) {
      const mpq_class eta(cfg.radius(static_cast<double>(t.p)));
      ASSERT_TRUE(table().is_prime(t.p) && table().is_prime(t.r));
      EXPECT_EQ(to_mpq(t.slack0), alpha * t.p - t.r);
      EXPECT_TRUE(to_mpq(t.slack0) > 0 && to_mpq(t.slack0) < eta);
      for (int i = 0; i < cfg.d(); ++i) {
        EXPECT_GE(t.q[i], 1);
        EXPECT_TRUE(to_mpq(t.slack[i]) > 0 && to_mpq(t.slack[i]) < eta);
      }
    }
  }
}

TEST(Counting, GoldenRegressionAtOneMillion) {
  const CountResult res = count_FN(FixedReal::named_constant("sqrt3"), golden(), 1000000, table());
  EXPECT_GT(res.count, 0);
  // Pinned from the first run of this configuration.
  EXPECT_EQ(res.count, 529);
}

TEST(Counting, MonotoneInNAndEpsilon) {
  const FixedReal alpha = R("1.37");
  std::int64_t prev = 0;
  for (std::int64_t N : {100, 1000, 5000, 20000, 100000}) {
    const std::int64_t c = count_FN(alpha, golden(), N, table()).count;
    EXPECT_GE(c, prev);
    prev = c;
  }
  prev = 0;
  for (double eps : {0.01, 0.05, 0.1, 0.15, 0.19}) {
    const std::int64_t c = count_FN(alpha, golden(eps), 50000, table()).count;
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(Counting, PiecewiseConstantUnderTinyPerturbation) {
  const FixedReal tiny(0, static_cast<u128>(1) << 28);  // 2^-100
  std::mt19937_64 rng(14);
  for (int i = 0; i < 20; ++i) {
    const FixedReal alpha = random_real(rng, 1, 1);
    const std::int64_t c = count_FN(alpha, golden(), 20000, table()).count;
    EXPECT_EQ(count_FN(alpha + tiny, golden(), 20000, table()).count, c);
    EXPECT_EQ(count_FN(alpha - tiny, golden(), 20000, table()).count, c);
  }
}

TEST(Counting, IntegralMethodsAgree) {
  for (std::int64_t N : {2, 3, 100, 5000, 30000}) {
    const auto s = integral_FN_exact(R("1"), R("2"), golden(), N, table(), IntegralMethod::sweep);
    const auto d = integral_FN_exact(R("1"), R("2"), golden(), N, table(), IntegralMethod::direct);
    ASSERT_EQ(s.terms.size(), d.terms.size()) << N;
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
      EXPECT_EQ(s.terms[i].p, d.terms[i].p);
      EXPECT_EQ(s.terms[i].length, d.terms[i].length);
    }
    EXPECT_EQ(s.value(), d.value());
  }
  EXPECT_THROW(integral_FN_exact(R("1"), R("2"), plane(), 100, table(), IntegralMethod::sweep),
               ContractError);
}

TEST(Counting, ThreadCountDoesNotChangeResults) {
  const FixedReal alpha = FixedReal::named_constant("sqrt3");
  auto run = [&](const char* threads) {
    setenv("DIOPH_LAB_THREADS", threads, 1);
    const CountResult c = count_FN(alpha, golden(), 200000, table());
    const IntegralResult s = integral_FN_exact(R("1"), R("2"), golden(), 30000, table());
    const IntegralResult d = integral_FN_exact(R("1"), R("2"), plane(), 2000, table());
    return std::tuple{c.count, c.tuples.empty() ? 0 : c.tuples.back().p, s.value(), d.value()};
  };
  const auto one = run("1");
  EXPECT_EQ(run("3"), one);
  EXPECT_EQ(run("8"), one);
  unsetenv("DIOPH_LAB_THREADS");
}

TEST(Counting, IntegralIsAdditive) {
  for (const ApproxConfig& cfg : {golden(), plane()}) {
    const std::int64_t N = cfg.d() == 1 ? 50000 : 3000;
    const FixedReal a = R("1"), m = R("1.3819"), b = R("2");
    const auto left = integral_FN_exact(a, m, cfg, N, table());
    const auto right = integral_FN_exact(m, b, cfg, N, table());
    const auto whole = integral_FN_exact(a, b, cfg, N, table());
    // Termwise: lengths add exactly for every p.
    std::map<std::int64_t, mpq_class> sum;
    for (const auto* r : {&left, &right}) {
      for (const IntegralTerm& t : r->terms) sum[t.p] += to_mpq(t.length);
    }
    std::size_t nonzero = 0;
    for (const auto& [p, v] : sum) nonzero += v != 0;
    ASSERT_EQ(nonzero, whole.terms.size());
    for (const IntegralTerm& t : whole.terms) EXPECT_EQ(sum[t.p], to_mpq(t.length)) << t.p;
    EXPECT_NEAR(static_cast<double>(left.value() + right.value()),
                static_cast<double>(whole.value()), 1e-12 * static_cast<double>(whole.value()));
  }
}

TEST(Counting, IntegralMatchesRiemannSum) {
  for (const ApproxConfig& cfg : {golden(), plane()}) {
    const std::int64_t N = 300;
    const auto exact = integral_FN_exact(R("1"), R("2"), cfg, N, table());
    const SolutionCounter counter(cfg, N, table());
    const std::int64_t points = 100000;
    long double sum = 0.0L;
    for (std::int64_t j = 0; j < points; ++j) {
      sum += counter.count_only(R("1") + FixedReal::from_ratio(2 * j + 1, 2 * points));
    }
    const double h = 1.0 / static_cast<double>(points);
    const double riemann = static_cast<double>(sum) * h;
    EXPECT_NEAR(riemann, static_cast<double>(exact.value()),
                static_cast<double>(exact.intervals) * h);
  }
}

TEST(Counting, GNFormula) {
  const ApproxConfig g = golden();
  for (std::int64_t N : {100, 10000, 1000000}) {
    const double n = static_cast<double>(N);
    EXPECT_NEAR(G_N_value(g, N), 0.25 * 0.25 * std::pow(n, 1 - 2 * (0.2 - 0.1)) / std::pow(std::log(n), 2),
                1e-12 * G_N_value(g, N));
  }
  const ApproxConfig p = plane();
  // A^2/B^2 = 1/4, min(sqrt2, sqrt3, 2) = sqrt2, 2^{d+1} = 8, gamma = 1/16.
  const double n = 1e4;
  const double expect = 0.25 * std::sqrt(2.0) / 8.0 * std::pow(n, 1 - 3 * (1.0 / 16 - 0.03)) /
                        std::pow(std::log(n), 2);
  EXPECT_NEAR(G_N_value(p, 10000), expect, 1e-12 * expect);
  EXPECT_EQ(G_N_value(p, 10000), G_N_variant(p, 10000));
  EXPECT_THROW(G_N_value(g, 1), RangeError);
}

TEST(Counting, WindowCountsMainTerm) {
  const ApproxConfig g = golden();
  const WindowParams wp = WindowParams::make(100000, R("1"), R("2"), g);
  const WindowCounts up = window_counts(wp, g, table(), SumOrder::ascending);
  const WindowCounts down = window_counts(wp, g, table(), SumOrder::descending);
  EXPECT_EQ(up.T_P, down.T_P);
  EXPECT_EQ(up.S_P, down.S_P);
  const double ratio = up.T_P / (wp.delta * (2.0 - wp.mu_window) * 100000.0);
  EXPECT_GE(ratio, 0.5);
  EXPECT_LE(ratio, 1.5);
  EXPECT_EQ(up.N_P, up.R_P * up.S_P);
  EXPECT_EQ(up.n_lo, 150000);
  EXPECT_EQ(up.n_hi, 200000);
}

TEST(Counting, WindowCountsDegenerateDelta) {
  const ApproxConfig g = golden();
  WindowParams wp = WindowParams::make(2000, R("1"), R("2"), g);
  wp.delta = 1.5;
  const WindowCounts wide = window_counts(wp, g, table());
  double lambda_sum = 0.0;
  for (std::int64_t n = wide.n_lo; n <= wide.n_hi; ++n) lambda_sum += table().von_mangoldt(n);
  EXPECT_GE(wide.T_P, lambda_sum - 1e-9);
  wp.delta = 1e-30;
  EXPECT_EQ(window_counts(wp, g, table()).T_P, 0.0);
}

TEST(Counting, ProductSet) {
  const ApproxConfig g = golden();
  const FixedReal alpha = FixedReal::named_constant("sqrt3");
  EXPECT_EQ(product_set_A(alpha, g, 500, 1.0).size(), 500u);
  const auto set = product_set_A(alpha, g, 10000);
  const double mu = std::pow(10000.0, 0.1 - 0.2);
  const mpq_class a = to_mpq(alpha), b = to_mpq(g.c.c[0] * alpha), m(mu);
  std::size_t idx = 0;
  for (std::int64_t n = 1; n <= 10000; ++n) {
    const bool member = frac_q(a * n) < m && frac_q(b * n) < m;
    if (!member) continue;
    ASSERT_LT(idx, set.size());
    EXPECT_EQ(set[idx].first, n);
    EXPECT_EQ(dioph::testing::from_i128(set[idx].second), floor_q(a * n) * n);
    ++idx;
  }
  EXPECT_EQ(idx, set.size());
}

TEST(Counting, SieveSideTrivialCase) {
  const ApproxConfig g = golden();
  SieveSideParams sp = SieveSideParams::make(1000, g);
  sp.mu_target = 1.0;
  sp.L = 3.0;
  const SieveSideCounts c = sieve_side_counts(R("1.3"), sp, g);
  EXPECT_EQ(c.S_exact, 1000);
  EXPECT_DOUBLE_EQ(c.main_term, 1000.0);
}

TEST(Counting, SieveSideMatchesNaiveLoop) {
  const ApproxConfig g = golden();
  SieveSideParams sp = SieveSideParams::make(10000, g);
  sp.Q = 6.0;  // admit t1 t2 = 6
  sp.t1 = 2;
  sp.t2 = 3;
  const FixedReal alpha = FixedReal::named_constant("sqrt3");
  const mpq_class y = to_mpq(alpha * sp.t1), beta = to_mpq(g.c.c[0] * alpha), mu(sp.mu_target);
  std::int64_t naive = 0;
  for (std::int64_t n = 1; n <= sp.N / sp.t1; ++n) {
    const bool first = frac_q(y * n / sp.t2) < mu / sp.t2;
    const bool second = frac_q(beta * (n * sp.t1)) < mu;
    naive += first && second;
  }
  EXPECT_EQ(sieve_side_counts(alpha, sp, g).S_exact, naive);
  sp.t1 = 3;
  sp.t2 = 2;
  EXPECT_GE(sieve_side_counts(alpha, sp, g).S_exact, 0);
}

TEST(Counting, SieveSideErrorTermControlsDeviation) {
  const ApproxConfig g = golden();
  for (std::int64_t N : {1000, 10000, 100000}) {
    SieveSideParams sp = SieveSideParams::make(N, g);
    for (const auto& [t1, t2] : divisor_pairs(sp.Q)) {
      sp.t1 = t1;
      sp.t2 = t2;
      for (const char* a : {"sqrt3", "e", "1.2345"}) {
        const SieveSideCounts c = sieve_side_counts(FixedReal::parse(a), sp, g);
        const double slack = static_cast<double>(N) * sp.mu_target / sp.L;
        EXPECT_LE(std::fabs(c.S_exact - c.main_term), c.E_bound + slack)
            << "N=" << N << " t=(" << t1 << "," << t2 << ") alpha=" << a;
        EXPECT_LE(sieve_side_E_raw(FixedReal::parse(a), sp, g), c.E_bound * (1 + 1e-12));
      }
    }
  }
}

TEST(Counting, DivisorPairsAndJN) {
  EXPECT_TRUE(divisor_pairs(0.5).empty());
  EXPECT_EQ(divisor_pairs(2.0),
            (std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {1, 2}, {2, 1}}));
  const ApproxConfig g = golden();
  SieveSideParams sp = SieveSideParams::make(1000, g);
  sp.Q = 0.5;
  EXPECT_EQ(J_N_alpha(R("1.5"), sp, g), 0.0);
  sp = SieveSideParams::make(10000, g);
  EXPECT_GT(J_N_alpha(R("1.5"), sp, g), 0.0);
  SieveOptions tight;
  tight.max_terms = 10;
  EXPECT_THROW(J_N_alpha(R("1.5"), sp, g, tight), ResourceError);
}

TEST(Counting, SieveSidePreconditions) {
  const ApproxConfig g = golden();
  SieveSideParams sp = SieveSideParams::make(1000, g);
  sp.t1 = 5;
  sp.t2 = 5;
  EXPECT_THROW(sieve_side_counts(R("1.5"), sp, g), ContractError);
}
