#include <gtest/gtest.h>

#include <cmath>

#include "dioph/error.hpp"
#include "dioph/experiment.hpp"
#include "dioph/fourier.hpp"

using namespace dioph;

namespace {

FixedReal R(const char* s) { return FixedReal::parse(s); }

ApproxConfig golden() {
  ApproxConfig cfg;
  cfg.c = CVector::make({FixedReal::named_constant("phi")}, 1);
  cfg.epsilon = 0.1;
  cfg.A = R("1");
  cfg.B = R("2");
  cfg.validate();
  return cfg;
}

const ArithTable& table() {
  static const ArithTable t = build_arith_table(2100000);
  return t;
}

// int_0^beta min(K, 1/||t||) dt in closed form.
double primitive(double K, double beta) {
  const double period = 2.0 * (1.0 + std::log(K / 2.0));
  const double whole = std::floor(beta);
  const double t = beta - whole;
  auto half = [K](double s) { return s <= 1.0 / K ? K * s : 1.0 + std::log(s * K); };
  const double part = t <= 0.5 ? half(t) : period - half(1.0 - t);
  return whole * period + part;
}

double closed_form(double A, double B, double K, double x) {
  const double ax = std::fabs(x);
  return (primitive(K, ax * B) - primitive(K, ax * A)) / ax;
}

}  // namespace

TEST(Experiment, AuditRowRatio) {
  const AuditRow r = make_row("x", 2.0, 8.0, {{"P", 10.0}});
  EXPECT_DOUBLE_EQ(r.ratio, 0.25);
  EXPECT_DOUBLE_EQ(r.param("P"), 10.0);
  EXPECT_THROW(r.param("J"), ContractError);
  EXPECT_EQ(make_row("y", 1.0, 0.0).ratio, 0.0);
  EXPECT_EQ(geometric_grid(2, 3, 5), (std::vector<std::int64_t>{8, 16, 32}));
}

TEST(Experiment, TheoremIRowsComeFromOneExactIntegral) {
  const ApproxConfig g = golden();
  const std::vector<std::int64_t> grid{1, 2, 64, 1000, 5000};
  const TheoremIReport rep = theorem_i_check(R("1"), R("2"), grid, g, table());
  ASSERT_EQ(rep.rows.size(), grid.size());
  EXPECT_EQ(rep.rows[0].integral, 0.0L);
  EXPECT_EQ(rep.rows[0].ratio, 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const IntegralResult direct = integral_FN_exact(R("1"), R("2"), g, grid[i], table());
    EXPECT_EQ(rep.rows[i].integral, direct.value()) << grid[i];
    if (grid[i] >= 2) EXPECT_EQ(rep.rows[i].G_N, G_N_value(g, grid[i]));
  }
  EXPECT_THROW(theorem_i_check(R("1"), R("2"), {100, 50}, g, table()), ContractError);
}

TEST(Experiment, TheoremIAdditiveInInterval) {
  const ApproxConfig g = golden();
  const std::vector<std::int64_t> grid{1000, 20000};
  const auto left = theorem_i_check(R("1"), R("1.5"), grid, g, table());
  const auto right = theorem_i_check(R("1.5"), R("2"), grid, g, table());
  const auto whole = theorem_i_check(R("1"), R("2"), grid, g, table());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long double sum = left.rows[i].integral + right.rows[i].integral;
    EXPECT_NEAR(static_cast<double>(sum), static_cast<double>(whole.rows[i].integral),
                1e-12 * static_cast<double>(whole.rows[i].integral));
  }
}

TEST(Experiment, KroneckerSamplesAreDeterministicAndInRange) {
  const auto a = kronecker_samples(R("1"), R("2"), 100, 42);
  const auto b = kronecker_samples(R("1"), R("2"), 100, 42);
  const auto c = kronecker_samples(R("1"), R("2"), 100, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const FixedReal& x : a) {
    EXPECT_LE(R("1"), x);
    EXPECT_LT(x, R("2"));
  }
}

TEST(Experiment, TheoremIIZeroAtTinyN) {
  ApproxConfig g = golden();
  const TheoremIIReport rep = theorem_ii_check({2, 3}, g, 10, 1, table());
  EXPECT_EQ(rep.K_est, 0.0);
  EXPECT_THROW(theorem_ii_check({100}, g, 5, 1, table()), ContractError);
}

TEST(Experiment, TheoremIIStableUnderDoubledSamples) {
  const ApproxConfig g = golden();
  const std::vector<std::int64_t> grid{1024, 2048, 4096};
  const TheoremIIReport a = theorem_ii_check(grid, g, 32, 7, table());
  const TheoremIIReport b = theorem_ii_check(grid, g, 64, 7, table());
  EXPECT_TRUE(std::isfinite(a.K_est));
  EXPECT_TRUE(std::isfinite(b.K_est));
  if (a.K_est > 0.0) EXPECT_NEAR(b.K_est / a.K_est, 1.0, 0.2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(b.rows[i].V_N / a.rows[i].V_N, 1.0, 0.2);
  }
}

TEST(Experiment, LimsupTrack) {
  const ApproxConfig g = golden();
  const auto grid = geometric_grid(2, 1, 20);
  const LimsupTrack t = limsup_track(FixedReal::named_constant("sqrt3"), g, grid, table());
  for (std::size_t i = 1; i < t.running_max.size(); ++i) {
    EXPECT_GE(t.running_max[i], t.running_max[i - 1]);
    EXPECT_GE(t.F[i], t.F[i - 1]);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(t.F[i], count_FN(FixedReal::named_constant("sqrt3"), g, grid[i], table()).count);
  }
  EXPECT_GT(t.running_max.back(), 0.3);
  const LimsupTrack z = limsup_track(R("1.5"), g, {1}, table());
  EXPECT_EQ(z.ratio[0], 0.0);
}

TEST(Experiment, BoundAuditRowsFinite) {
  const ApproxConfig g = golden();
  const auto rows = bound_audit(10000, g, table());
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.back().label, "T_A");
  for (const AuditRow& r : rows) {
    EXPECT_TRUE(std::isfinite(r.ratio)) << r.label;
    EXPECT_GT(r.bound, 0.0) << r.label;
    EXPECT_GE(r.exact, 0.0) << r.label;
  }
  const auto again = bound_audit(10000, g, table());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].exact, again[i].exact);
}

TEST(Experiment, BoundAuditSubsetExpansionIsExact) {
  const ApproxConfig g = golden();
  for (const AuditRow& r : bound_audit(5000, g, table())) {
    if (r.label == "T(P):expansion") EXPECT_NEAR(r.exact, r.bound, 1e-9 * r.bound);
  }
}

TEST(Experiment, BoundAuditDegenerateJ) {
  const ApproxConfig g = golden();
  AuditOptions opt;
  opt.J = 1;
  const auto rows = bound_audit(4096, g, table(), opt);
  double z1h = -1.0, z1 = -1.0;
  for (const AuditRow& r : rows) {
    if (r.label == "Z1:Z1H") {
      z1 = r.exact;
      z1h = r.bound;
    }
  }
  ASSERT_GE(z1h, 0.0);
  // With J = 1 the majorant of Z1 is the single dyad H = 1 of R_d.
  const std::int64_t M = static_cast<std::int64_t>(std::floor(std::pow(std::pow(4096.0, 0.4), 2)));
  const std::vector<std::int64_t> H{1};
  EXPECT_NEAR(z1h, R_d_sum(H, M, 4096.0, g.c), 1e-9 * z1h);
  EXPECT_LE(z1, z1h);
}

TEST(Experiment, BoundAuditTAWithinBound) {
  const ApproxConfig g = golden();
  for (std::int64_t P : {10000, 20000, 40000}) {
    bool seen = false;
    for (const AuditRow& r : bound_audit(P, g, table())) {
      if (r.label != "T_A" && r.label != "T_A-U_A") continue;
      seen = true;
      EXPECT_LE(r.exact, r.bound) << r.label << " at P=" << P;
    }
    EXPECT_TRUE(seen);
  }
}

TEST(Experiment, IntLemmaAgainstClosedForm) {
  for (double K : {2.0, 10.0, 100.0}) {
    for (double x : {1e-3, 0.37, 1.0, 5.5, 1e3, -2.0}) {
      const QuadResult q = intlemma_quad(1.0, 2.0, K, x);
      EXPECT_NEAR(q.integral, closed_form(1.0, 2.0, K, x), 1e-8 * q.integral) << K << " " << x;
    }
  }
  const QuadResult unit = intlemma_quad(0.0, 1.0, 2.0, 1.0);
  EXPECT_NEAR(unit.integral, 2.0, 1e-10);
  EXPECT_LE(unit.ratio, 4.0);
}

TEST(Experiment, IntLemmaTrivialCase) {
  // |x| (B - A) < 1/K.
  const double K = 100.0, x = 1e-3;
  const QuadResult q = intlemma_quad(1.0, 2.0, K, x);
  EXPECT_LE(q.integral, K * 1.0 + 1e-9);
  EXPECT_DOUBLE_EQ(q.bound, K * std::log(K));
  EXPECT_LE(q.ratio, 1.0 / std::log(K) + 1e-12);
}

TEST(Experiment, IntLemmaAdditive) {
  const QuadResult a = intlemma_quad(1.0, 1.4, 50.0, 7.3);
  const QuadResult b = intlemma_quad(1.4, 2.0, 50.0, 7.3);
  const QuadResult c = intlemma_quad(1.0, 2.0, 50.0, 7.3);
  EXPECT_NEAR(a.integral + b.integral, c.integral, 1e-8 * c.integral);
  EXPECT_THROW(intlemma_quad(1.0, 2.0, 1.5, 1.0), RangeError);
  EXPECT_THROW(intlemma_quad(1.0, 2.0, 5.0, 0.0), RangeError);
  EXPECT_THROW(intlemma_quad(1.0, 2.0, 5.0, 1.0, 10), RangeError);
}

TEST(Experiment, AverageE) {
  const ApproxConfig g = golden();
  const auto rows = average_E_check({1000, 10000}, g, 16);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_GE(r.lhs, 0.0);
    EXPECT_GT(r.target, 0.0);
  }
}
