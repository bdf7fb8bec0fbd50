#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dioph/error.hpp"
#include "dioph/vaughan.hpp"
#include "oracle.hpp"

using namespace dioph;

namespace {

const ArithTable& table() {
  static const ArithTable t = build_arith_table(100000);
  return t;
}

}  // namespace

TEST(Vaughan, BCoefficientExamples) {
  EXPECT_EQ(b_coeff(table(), 1, 1.0), 1);
  EXPECT_EQ(b_coeff(table(), 6, 2.0), 0);
  EXPECT_EQ(b_coeff(table(), 4, 3.0), 0);
  EXPECT_EQ(b_coeff(table(), 30, 100.0), 0);
  const std::vector<int> b = b_coeff_table(table(), 1000, 7.5);
  for (std::int64_t l = 1; l <= 1000; ++l) ASSERT_EQ(b[l], b_coeff(table(), l, 7.5)) << l;
}

TEST(Vaughan, BBoundedByDivisorCount) {
  for (double v : {5.0, 10.0, 31.0, 316.0}) {
    const std::vector<int> b = b_coeff_table(table(), 100000, v);
    for (std::int64_t l = 1; l <= 100000; ++l) {
      ASSERT_LE(std::abs(b[l]), table().divisor_count(l)) << l;
    }
  }
}

TEST(Vaughan, SecondMomentOfB) {
  const ArithTable t = build_arith_table(20000);
  for (std::int64_t L : {100, 1000, 10000}) {
    const std::vector<int> b = b_coeff_table(t, 2 * L, std::sqrt(2.0 * L));
    double sb = 0.0, sd = 0.0;
    for (std::int64_t l = L; l <= 2 * L; ++l) {
      sb += static_cast<double>(b[l]) * b[l];
      sd += static_cast<double>(t.divisor_count(l)) * t.divisor_count(l);
    }
    EXPECT_LE(sb, sd);
    EXPECT_LE(sd, 40.0 * L * std::pow(std::log(2.0 * L), 3));
  }
}

TEST(Vaughan, DecomposeSpecialCases) {
  const VaughanParams p{5, 5, 1000};
  const VaughanTerms prime = vaughan_decompose(table(), 101, p);
  EXPECT_EQ(prime.a1, 0.0);
  EXPECT_EQ(prime.a2, 0.0);
  EXPECT_EQ(prime.a4, 0.0);
  EXPECT_NEAR(prime.a3, std::log(101.0), 1e-14);
  const VaughanTerms one = vaughan_decompose(table(), 1, p);
  EXPECT_EQ(one.sum(), 0.0);
  EXPECT_EQ(one.a1, 0.0);
}

TEST(Vaughan, IdentityHoldsForAllSmallN) {
  for (double uv : {5.0, 10.0, 31.0}) {
    const VaughanParams p{uv, uv, 10000};
    for (std::int64_t n = 1; n <= 10000; ++n) {
      const VaughanTerms t = vaughan_decompose(table(), n, p);
      ASSERT_NEAR(t.sum(), table().von_mangoldt(n), 1e-9) << "n=" << n << " u=v=" << uv;
    }
  }
}

TEST(Vaughan, ParamsValidate) {
  EXPECT_THROW((VaughanParams{0.5, 2, 10}.validate()), ConfigError);
  EXPECT_THROW((VaughanParams{5, 5, 10}.validate()), ConfigError);
  EXPECT_NO_THROW((VaughanParams{2, 5, 10}.validate()));
}

TEST(Vaughan, TypeSumsConstantFunction) {
  const TypeSums s = type_sums(table(), [](std::int64_t) { return std::complex<double>(1.0); },
                               {2, 2, 20});
  // Oracle: log of the lcm of 1..20 minus Lambda(2).
  const double oracle = std::log(232792560.0) - std::log(2.0);
  EXPECT_NEAR(s.lhs.real(), oracle, 1e-12);
  EXPECT_EQ(s.lhs.imag(), 0.0);
  const TypeSums zero =
      type_sums(table(), [](std::int64_t) { return std::complex<double>(0.0); }, {2, 2, 20});
  EXPECT_EQ(zero.lhs, std::complex<double>(0.0));
  EXPECT_EQ(zero.T2, 0.0);
}

TEST(Vaughan, TypeSumsBoundWithFittedConstant) {
  const Phase phi = phase_of(FixedReal::named_constant("phi"));
  const TypeSums s = type_sums(
      table(), [phi](std::int64_t n) { return unit_root(phase_mul(phi, n)); }, {10, 10, 10000});
  EXPECT_LE(std::abs(s.lhs), 5.0 * (std::log(20000.0) * s.T1 + s.T2));
  EXPECT_GT(s.fitted_constant, 0.0);
  EXPECT_LE(s.fitted_constant, 5.0);
}

TEST(Vaughan, ReassembledSumMatchesDirect) {
  std::mt19937_64 rng(11);
  const PrimePowers pp = prime_powers_between(table(), 1, 10000);
  for (int i = 0; i < 20; ++i) {
    const FixedReal theta = dioph::testing::random_real(rng, 0, 1);
    const Phase t = phase_of(theta);
    const auto f = [t](std::int64_t n) { return unit_root(phase_mul(t, n)); };
    const std::complex<double> direct = lambda_exp_sum(pp, t);
    const VaughanPieces pieces = vaughan_reassemble(table(), f, {10, 10, 10000});
    EXPECT_LE(std::abs(pieces.total() - direct), 1e-6 * std::max(1.0, std::abs(direct)));
  }
}

TEST(Vaughan, LambdaExpSum) {
  const std::complex<double> zero = lambda_exp_sum(table(), 1, 100, FixedReal());
  double psi = 0.0;
  for (std::int64_t n = 1; n <= 100; ++n) psi += table().von_mangoldt(n);
  EXPECT_NEAR(zero.real(), psi, 1e-12);
  EXPECT_EQ(zero.imag(), 0.0);
  const FixedReal th = FixedReal::parse("0.3");
  const std::complex<double> single = lambda_exp_sum(table(), 2, 2, th);
  EXPECT_NEAR(std::abs(single - std::log(2.0) * unit_root(phase_mul(phase_of(th), 2))), 0.0,
              1e-15);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20; ++i) {
    const FixedReal theta = dioph::testing::random_real(rng, 0, 1);
    EXPECT_LE(std::abs(lambda_exp_sum(table(), 1, 100, theta)), psi + 1e-9);
  }
  EXPECT_THROW(lambda_exp_sum(table(), 10, 5, th), RangeError);
}
