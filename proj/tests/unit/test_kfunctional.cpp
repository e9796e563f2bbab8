#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "tapmeans/catalog.hpp"
#include "tapmeans/errors.hpp"
#include "tapmeans/kfunctional.hpp"
#include "tapmeans/operators.hpp"

using namespace tapmeans;

namespace {

double single_mode_k(int k, int n, double delta) {
  return std::min(1.0, std::pow(delta, n) * falling_factorial(k, n));
}

}  // namespace

TEST(KLower, ConstantIsZero) {
  EXPECT_EQ(k_lower_lemma2(FourierSeries::constant(3.0), 0.8, 1, 2.0), 0.0);
}

TEST(KLower, SingleCosineSup) {
  // (1/(2 n!)) (1-rho)^n k!/(k-n)! rho^k for cos kx, p = inf.
  for (int k : {2, 5}) {
    for (int n : {1, 2}) {
      const double rho = 0.8;
      const double expected = 0.5 / falling_factorial(n, n) * std::pow(1 - rho, n) *
                              falling_factorial(k, n) * std::pow(rho, k);
      EXPECT_NEAR(k_lower_lemma2(FourierSeries::cosine(k), rho, n, kInfinity), expected, 1e-12);
    }
  }
}

TEST(KLower, RejectsSmallRho) {
  EXPECT_THROW(k_lower_lemma2(FourierSeries::cosine(1), 0.4, 1, 2.0), PreconditionViolation);
  EXPECT_THROW(k_upper_lemma2(FourierSeries::cosine(1), 1.0, 1, 2.0), PreconditionViolation);
}

TEST(KUpper, CosineExample) {
  // n = 1, rho = 0.81: 0.19 ||cos|| + 0.19 * 0.9 ||cos||.
  const auto f = FourierSeries::cosine(1);
  const double c2 = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(k_upper_lemma2(f, 0.81, 1, 2.0), 0.19 * c2 + 0.19 * 0.9 * c2, 1e-12);
  EXPECT_NEAR(k_upper_lemma2(f, 0.81, 1, kInfinity), 0.19 + 0.19 * 0.9, 1e-9);
}

TEST(KUpper, LowDegreeIsZero) {
  const auto f = FourierSeries::constant(1.0) + FourierSeries::cosine(1);
  EXPECT_NEAR(k_upper_lemma2(f, 0.7, 2, 2.0), 0.0, 1e-15);
}

TEST(KBracket, RandomSeriesOrdered) {
  const auto f = make_random_trig_poly(8, 11).series;
  for (double rho : {0.5, 0.8, 0.95}) {
    for (double p : {1.0, 2.0, kInfinity}) {
      EXPECT_LE(k_lower_lemma2(f, rho, 1, p), k_upper_lemma2(f, rho, 1, p) + 1e-12);
      const auto b = k_bracket(f, 1 - rho, 2, p);
      EXPECT_LE(b.lower, b.upper);
      EXPECT_FALSE(b.lower_clamped);
    }
  }
}

TEST(KMinimize, FeasiblePoints) {
  const auto f = make_random_trig_poly(6, 3).series;
  for (double p : {1.0, 2.0, kInfinity}) {
    const double delta = 0.1;
    const auto res = k_upper_minimize(f, delta, 1, p);
    EXPECT_LE(res.value, norm(f, p) + 1e-9);
    EXPECT_LE(res.value, delta * norm(radial_derivative(f, 1), p) + 1e-9);
    EXPECT_NEAR(k_objective(f, res.witness, delta, 1, p), res.value, 1e-9 * (1 + res.value));
  }
}

TEST(KMinimize, SingleModeClosedForm) {
  for (int k : {2, 4, 8}) {
    for (int n : {1, 2}) {
      for (double p : {1.0, 2.0, kInfinity}) {
        for (double delta : {0.25, 0.1, 0.05}) {
          const auto f = FourierSeries::exponential(k);
          const double exact = single_mode_k(k, n, delta);
          const auto res = k_upper_minimize(f, delta, n, p);
          EXPECT_NEAR(res.value, exact, 0.05 * exact) << "k=" << k << " n=" << n << " p=" << p;
          const auto b = k_bracket(f, delta, n, p);
          EXPECT_LE(b.lower, exact * (1 + 1e-9));
          EXPECT_GE(b.upper, exact * (1 - 1e-9));
        }
      }
    }
  }
}

TEST(KBracket, ConstantIsZero) {
  const auto b = k_bracket(FourierSeries::constant(2.0), 0.1, 1, 2.0);
  EXPECT_EQ(b.lower, 0.0);
  EXPECT_NEAR(b.upper, 0.0, 1e-15);
}

TEST(KBracket, CosineTikhonovExact) {
  // Per-mode shrinkage: min_c |1-c| a + 0.12 |c| a on the single active pair.
  const auto f = FourierSeries::cosine(4);
  const auto b = k_bracket(f, 0.1, 2, 2.0);
  const double n2 = 1.0 / std::sqrt(2.0);
  EXPECT_LE(b.upper, 0.12 * n2 * (1 + 1e-9));
  EXPECT_NEAR(b.upper, 0.12 * n2, 1e-6);
}

TEST(KBracket, MonotoneInDelta) {
  const auto f = catalog_entry("weierstrass:alpha=0.5,J=6").series;
  double prev_upper = 0.0;
  for (double delta : {0.01, 0.05, 0.1, 0.25, 0.5}) {
    const auto b = k_bracket(f, delta, 1, 2.0);
    EXPECT_GE(b.upper + 1e-8, prev_upper);
    prev_upper = b.upper;
  }
}

TEST(KBracket, LargeDeltaFlagsLower) {
  const auto b = k_bracket(FourierSeries::cosine(2), 0.75, 1, 2.0);
  EXPECT_FALSE(b.lower_available);
  EXPECT_EQ(b.lower, 0.0);
}

TEST(KBracket, ScalesLinearly) {
  const auto f = make_random_trig_poly(5, 9).series;
  const auto a = k_bracket(f, 0.1, 1, 2.0);
  const auto b = k_bracket(f * Complex(3.0), 0.1, 1, 2.0);
  EXPECT_NEAR(b.lower, 3.0 * a.lower, 1e-10);
  EXPECT_NEAR(b.upper, 3.0 * a.upper, 1e-10 + 1e-7 * a.upper);
}

TEST(KMinimize, NotWorseThanLemma2) {
  const auto f = make_geometric(0.5).series;
  for (double rho : {0.5, 0.9}) {
    const auto res = k_upper_minimize(f, 1 - rho, 1, 2.0);
    EXPECT_LE(res.value, k_upper_lemma2(f, rho, 1, 2.0) + 1e-8);
  }
}
