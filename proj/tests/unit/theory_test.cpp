#include <cmath>

#include <gtest/gtest.h>

#include "sosp/core/error.hpp"
#include "sosp/core/rng.hpp"
#include "sosp/theory/bounds.hpp"

namespace sosp::theory {
namespace {

ToleranceConfig tol(double eps_g, double eps_H, double alpha, double L, double M) {
  ToleranceConfig c;
  c.eps_g = eps_g;
  c.eps_H = eps_H;
  c.alpha = alpha;
  c.L = L;
  c.M = M;
  return c;
}

TEST(CEps, HandEvaluatedExamples) {
  EXPECT_NEAR(c_eps(0.3, 0.3, 1, 1), 0.006, 1e-15);
  EXPECT_NEAR(c_eps(1, 1, 1, 1), 1.0 / 6.0, 1e-15);
}

TEST(CEps, VanishesMonotonicallyAsEpsGShrinks) {
  double prev = c_eps(1.0, 1.0, 1, 1);
  for (double e = 0.5; e > 1e-8; e *= 0.5) {
    const double cur = c_eps(e, 1.0, 1, 1);
    EXPECT_LE(cur, prev);
    prev = cur;
  }
  EXPECT_LT(prev, 1e-15);
}

TEST(CEps, MonotoneInEveryArgument) {
  Rng rng(17, 0);
  for (int i = 0; i < 1000; ++i) {
    const double g = rng.uniform(0.01, 2), h = rng.uniform(0.01, 2);
    const double L = rng.uniform(0.1, 20), M = rng.uniform(0.1, 20);
    const double f = rng.uniform(1.0, 2.0);
    const double base = c_eps(g, h, L, M);
    EXPECT_GE(c_eps(g * f, h, L, M), base);
    EXPECT_GE(c_eps(g, h * f, L, M), base);
    EXPECT_LE(c_eps(g, h, L * f, M), base);
    EXPECT_LE(c_eps(g, h, L, M * f), base);
  }
}

TEST(CEps, RejectsNonPositiveInput) {
  EXPECT_THROW(c_eps(0, 1, 1, 1), ContractError);
  EXPECT_THROW(c_eps(1, 1, -1, 1), ContractError);
}

TEST(ExpectedIterBound, Examples) {
  EXPECT_EQ(expected_iter_bound(-1.0, -1.0, 0.1), 0.0);
  EXPECT_NEAR(expected_iter_bound(0.25, 0.0, 0.006), 41.6667, 1e-4);
  EXPECT_DOUBLE_EQ(expected_iter_bound(0.5, 0.0, 0.006), 2 * expected_iter_bound(0.25, 0.0, 0.006));
  EXPECT_THROW(expected_iter_bound(-1.0, 0.0, 0.1), ContractError);
}

TEST(HighProbIters, ConstantsAtPointThree) {
  const HighProbBound b = high_prob_iters(1.0, 0.0, tol(0.3, 0.3, 0.3, 1, 1));
  EXPECT_NEAR(b.B, 19.0, 1e-12);
  EXPECT_NEAR(b.C, 25600.0, 1e-8);
}

// Independent evaluation of the three-branch K and of n.
double reference_n(double f0, double f_bar, const ToleranceConfig& c) {
  const double ce = std::min(c.eps_g * c.eps_g / (6 * c.L),
                             2 * std::pow(c.eps_H, 3) / (9 * c.M * c.M));
  const double A = (f0 - f_bar) / ce;
  const double B = 1 + 18 * c.alpha * c.L / (c.M * c.eps_g);
  const double C = 2304 * c.M * c.M * c.alpha * c.alpha * c.eps_g * c.eps_g / std::pow(c.eps_H, 6);
  const double eta = c.eta;
  const double K = std::max({C * std::log(1 / c.delta), 4 * eta * C * std::pow(A, 1 / eta),
                             4 * eta * eta * std::pow(C, 1 + 1 / (eta - 1)) *
                                 std::pow(B, 1 / (eta - 1))});
  return 2 * A + B * K;
}

TEST(HighProbIters, MatchesReferenceAtEtaTwoAndEleven) {
  for (int eta : {2, 11}) {
    ToleranceConfig c = tol(0.3, 0.3, 0.3, 1, 1);
    c.eta = eta;
    const HighProbBound b = high_prob_iters(1.0, 0.0, c);
    EXPECT_NEAR(b.n / reference_n(1.0, 0.0, c), 1.0, 1e-12) << "eta " << eta;
    EXPECT_NEAR(b.n, 2 * (1.0 / 0.006) + b.B * b.K, 1e-9 * b.n);
  }
  ToleranceConfig c2 = tol(0.3, 0.3, 0.3, 1, 1), c11 = c2;
  c11.eta = 11;
  const HighProbBound b2 = high_prob_iters(1.0, 0.0, c2), b11 = high_prob_iters(1.0, 0.0, c11);
  EXPECT_EQ(b2.B, b11.B);
  EXPECT_EQ(b2.C, b11.C);
  EXPECT_NE(b2.K, b11.K);
}

TEST(HighProbIters, DeltaNearOneDropsTheLogBranch) {
  ToleranceConfig c = tol(0.3, 0.3, 0.3, 1, 1);
  c.delta = 1.0 - 1e-15;
  const HighProbBound b = high_prob_iters(1.0, 0.0, c);
  const double A = 1.0 / 0.006;
  const double other = std::max(4 * 2 * b.C * std::sqrt(A), 4 * 4 * b.C * b.C * b.B);
  EXPECT_NEAR(b.K / other, 1.0, 1e-12);
}

TEST(HighProbIters, NAtLeastTwiceTheExpectedBound) {
  Rng rng(23, 0);
  for (int i = 0; i < 500; ++i) {
    const double L = rng.uniform(0.5, 20);
    const double eps_H = rng.uniform(0.01, 0.5);
    ToleranceConfig c = tol(rng.uniform(0.01, 1), eps_H, rng.uniform(eps_H, L), L,
                            rng.uniform(0.5, 20));
    c.eta = 2 + static_cast<int>(rng.index(10));
    c.delta = rng.uniform(0.01, 0.99);
    const double f_bar = rng.uniform(-5, 0);
    const double f0 = f_bar + rng.uniform(0, 10);
    const HighProbBound b = high_prob_iters(f0, f_bar, c);
    const double e = expected_iter_bound(f0, f_bar, c_eps(c.eps_g, c.eps_H, c.L, c.M));
    EXPECT_GE(b.n, 2 * e);
    EXPECT_TRUE(std::isfinite(b.n));
  }
}

TEST(HighProbIters, CIsScaleFreeUnderSqrtCoupling) {
  const double M = 3.0, L = 10.0;
  for (double eps : {0.1, 0.01, 1e-3}) {
    const Tolerances a = coupling_preset(Coupling::Sqrt, eps, L, M);
    const Tolerances b = coupling_preset(Coupling::Sqrt, eps / 2, L, M);
    const double Ca = high_prob_iters(1, 0, tol(a.eps_g, a.eps_H, a.eps_H, L, M)).C;
    const double Cb = high_prob_iters(1, 0, tol(b.eps_g, b.eps_H, b.eps_H, L, M)).C;
    EXPECT_GE(Ca / Cb, 0.9);
    EXPECT_LE(Ca / Cb, 1.1);
  }
}

TEST(CouplingPreset, SqrtExamples) {
  const Tolerances t = coupling_preset(Coupling::Sqrt, 0.01, 1, 1);
  EXPECT_DOUBLE_EQ(t.eps_g, 0.01);
  EXPECT_NEAR(t.eps_H, 0.1, 1e-15);
  EXPECT_NEAR(coupling_preset(Coupling::Sqrt, 0.01, 1, 4).eps_H, 0.2, 1e-15);
}

TEST(CouplingPreset, CubeTwoThirdsBalancesTheTwoDecreases) {
  Rng rng(4, 4);
  for (int i = 0; i < 200; ++i) {
    const double eps = rng.uniform(1e-4, 1), L = rng.uniform(0.1, 50), M = rng.uniform(0.1, 50);
    const Tolerances t = coupling_preset(Coupling::CubeTwoThirds, eps, L, M);
    const double lhs = t.eps_g * t.eps_g / (6 * L);
    const double rhs = 2 * std::pow(t.eps_H, 3) / (9 * M * M);
    EXPECT_NEAR(lhs / rhs, 1.0, 1e-12);
  }
}

TEST(OperationComplexity, Examples) {
  EXPECT_NEAR(operation_complexity(100, 0.04), 500, 1e-9);
  EXPECT_EQ(operation_complexity(37, 1.0), 37);
  EXPECT_NEAR(operation_complexity(10, 0.05) / operation_complexity(10, 0.1), std::sqrt(2.0), 1e-12);
}

TEST(SampleSizes, Examples) {
  EXPECT_EQ(gradient_sample_size(1, 1, 0.01), 800);
  EXPECT_EQ(hessian_sample_size(1, 10, 0.5, 0.01), 14716);
  const SampleSizes s = sample_sizes(1, 1, 1, 10, 0.5, 0.01);
  EXPECT_EQ(s.grad_size, 800);
  EXPECT_EQ(s.hess_size, 14716);
  EXPECT_NEAR(gradient_sample_size_raw(1, 2, 0.01) / gradient_sample_size_raw(1, 1, 0.01), 0.25,
              1e-15);
}

TEST(SampleSizes, IndependentFormula) {
  const double ref_g = 16 * std::pow(1 + std::sqrt(8 * std::log(100.0)), 2);
  EXPECT_NEAR(gradient_sample_size_raw(1, 1, 0.01), ref_g, 1e-9);
  EXPECT_NEAR(ref_g, 799.7, 0.05);
  const double ref_h = 484 * std::log(2000.0) * 4;
  EXPECT_NEAR(hessian_sample_size_raw(1, 10, 0.5, 0.01), ref_h, 1e-9);
}

TEST(SampleSizes, Monotone) {
  Rng rng(5, 0);
  for (int i = 0; i < 500; ++i) {
    const double G = rng.uniform(0.1, 10), D = rng.uniform(0.01, 2), xi = rng.uniform(1e-4, 0.5);
    const double f = rng.uniform(1.0, 3.0);
    EXPECT_LE(gradient_sample_size(G, D * f, xi), gradient_sample_size(G, D, xi));
    EXPECT_LE(gradient_sample_size(G, D, std::min(0.99, xi * f)), gradient_sample_size(G, D, xi));
    const double K = rng.uniform(0.1, 10), eH = rng.uniform(0.05, 2);
    const std::size_t d = 1 + rng.index(50);
    EXPECT_LE(hessian_sample_size(K, d, eH * f, xi), hessian_sample_size(K, d, eH, xi));
    EXPECT_LE(hessian_sample_size(K, d, eH, std::min(0.99, xi * f)),
              hessian_sample_size(K, d, eH, xi));
  }
}

TEST(StrictSaddleTargets, Examples) {
  const Tolerances one = strict_saddle_targets(1.0);
  EXPECT_DOUBLE_EQ(one.eps_g, 1.0 / 24.0);
  EXPECT_DOUBLE_EQ(one.eps_H, 1.0 / 3.0);
  const Tolerances four = strict_saddle_targets(4.0);
  EXPECT_NEAR(four.eps_g, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(four.eps_H, 4.0 / 3.0, 1e-15);
  const Tolerances tiny = strict_saddle_targets(1e-12);
  EXPECT_LT(tiny.eps_g, 1e-15);
  EXPECT_LT(tiny.eps_H, 1e-11);
  EXPECT_DOUBLE_EQ(strict_saddle_radius(4.0), 2.0 / 3.0);
}

TEST(MfConstants, Examples) {
  const LipschitzConstants one = mf_constants(1.0);
  EXPECT_EQ(one.L, 16);
  EXPECT_EQ(one.M, 24);
  const LipschitzConstants four = mf_constants(4.0);
  EXPECT_EQ(four.L, 64);
  EXPECT_EQ(four.M, 48);
  for (double g : {0.5, 1.0, 7.0}) {
    const LipschitzConstants c = mf_constants(g);
    EXPECT_NEAR(c.L * g / (c.M * c.M), g / 36, 1e-15);
  }
}

TEST(LanczosCap, FormulaAndDimensionClamp) {
  const double d = 50, delta = 0.05, nh = 1.0, acc = 0.01;
  const double lg = std::log(25 * d / (delta * delta));
  const double ref = std::min(d, 1 + std::max(0.5 * lg, 1.5 * lg * std::sqrt(nh / acc)));
  EXPECT_NEAR(lanczos_cap(50, delta, nh, acc), ref, 1e-12);
  EXPECT_EQ(lanczos_cap(3, delta, nh, acc), 3.0);
}

TEST(UnionBound, XiIsDeltaOverTwoN) { EXPECT_DOUBLE_EQ(union_bound_xi(0.1, 50), 0.001); }

TEST(BoundReport, EntriesFinitePositiveAndPure) {
  ToleranceConfig c = tol(0.1, 0.1, 0.1, 13, 12);
  c.f_bar = -2.5;
  const BoundReport a = bound_report(-0.05, 10, c, FiniteSumBounds{2, 3, 0.5, true});
  const BoundReport b = bound_report(-0.05, 10, c, FiniteSumBounds{2, 3, 0.5, true});
  for (double v : {a.c_eps, a.expected_T_bound, a.B, a.C, a.K, a.n_high_prob,
                   a.operation_complexity, a.lanczos_cap, a.union_bound_xi}) {
    EXPECT_TRUE(std::isfinite(v) && v > 0);
  }
  ASSERT_TRUE(a.grad_sample_size && a.hess_sample_size);
  EXPECT_GT(*a.grad_sample_size, 0);
  EXPECT_EQ(a.n_high_prob, b.n_high_prob);
  EXPECT_EQ(a.grad_sample_size, b.grad_sample_size);
  EXPECT_FALSE(bound_report(-0.05, 10, c).grad_sample_size.has_value());
}

TEST(DefaultMaxIter, TenTimesCeilAndSaturates) {
  EXPECT_EQ(default_max_iter(12.3), 130);
  EXPECT_GT(default_max_iter(1e300), 0);
}

}  // namespace
}  // namespace sosp::theory
