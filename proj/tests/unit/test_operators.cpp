#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tapmeans/errors.hpp"
#include "tapmeans/operators.hpp"

using namespace tapmeans;

namespace {

FourierSeries random_real_series(int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(2 * degree + 1);
  c[degree] = u(rng);
  for (int k = 1; k <= degree; ++k) {
    const Complex z(u(rng), u(rng));
    c[degree + k] = z;
    c[degree - k] = std::conj(z);
  }
  return FourierSeries(degree, c);
}

// Exact C(k, j) by integer arithmetic for k <= 60.
double exact_choose(int k, int j) {
  unsigned __int128 c = 1;
  for (int i = 1; i <= j; ++i) c = c * static_cast<unsigned>(k - j + i) / static_cast<unsigned>(i);
  return static_cast<double>(c);
}

}  // namespace

TEST(Lambda, Examples) {
  EXPECT_EQ(lambda_multiplier(3, 5, 0.7), 1.0);
  EXPECT_NEAR(lambda_multiplier(4, 1, 0.7), 0.2401, 1e-15);
  EXPECT_NEAR(lambda_multiplier(2, 2, 0.5), 0.75, 1e-15);
  EXPECT_NEAR(lambda_multiplier(3, 2, 0.6), 0.648, 1e-15);
  EXPECT_THROW(lambda_multiplier(3, 1, 1.5), InvalidParameter);
  EXPECT_THROW(lambda_multiplier(3, 1, -0.1), InvalidParameter);
}

TEST(Lambda, EqualsOneAtRhoOne) {
  for (int k = 0; k < 50; ++k) EXPECT_EQ(lambda_multiplier(k, 3, 1.0), 1.0);
}

TEST(Lambda, SaturationWitness) {
  // lambda_{r,r}(rho) = 1 - (1-rho)^r
  for (int r = 1; r <= 6; ++r) {
    for (double rho : {0.1, 0.5, 0.9, 0.999}) {
      EXPECT_NEAR(lambda_complement(r, r, rho), std::pow(1.0 - rho, r), 1e-15 * 1.0);
      EXPECT_NEAR(lambda_multiplier(r, r, rho), 1.0 - std::pow(1.0 - rho, r), 1e-15);
    }
  }
}

TEST(Lambda, ComplementMatchesTailSum) {
  for (int k : {1, 5, 20, 100, 1000}) {
    for (int r : {1, 2, 5}) {
      for (double rho : {0.3, 0.9, 0.999}) {
        if (k < r) continue;
        double tail = 0.0;
        for (int j = r; j <= k; ++j) tail += binomial_term(k, j, rho);
        const double c = lambda_complement(k, r, rho);
        EXPECT_NEAR(c, tail, 1e-13 * std::max(tail, 1e-300) + 1e-300) << k << " " << r << " " << rho;
        EXPECT_NEAR(c + lambda_multiplier(k, r, rho), 1.0, 1e-13);
      }
    }
  }
}

TEST(Binomial, PartitionOfUnity) {
  for (int k = 0; k <= 200; ++k) {
    for (double rho : {0.0, 0.1, 0.5, 0.9, 0.99, 1.0}) {
      EXPECT_NEAR(binomial_partition_sum(k, rho), 1.0, 1e-12) << k << " " << rho;
      for (int r = 1; r <= 5; ++r) {
        const double l = lambda_multiplier(k, r, rho);
        EXPECT_GE(l, 0.0);
        EXPECT_LE(l, 1.0);
        if (k < r) EXPECT_EQ(l, 1.0);
      }
    }
  }
}

TEST(Binomial, LargeKStaysNormalized) {
  for (int k : {1000, 4096, 10000}) {
    for (double rho : {0.1, 0.5, 0.999}) EXPECT_NEAR(binomial_partition_sum(k, rho), 1.0, 1e-12);
  }
}

TEST(Binomial, AgainstExactIntegers) {
  for (int k = 0; k <= 60; ++k) {
    for (int j = 0; j <= k; ++j) {
      const double rho = 0.37;
      const double exact = exact_choose(k, j) * std::pow(1 - rho, j) * std::pow(rho, k - j);
      EXPECT_NEAR(binomial_term(k, j, rho), exact, 1e-10 * exact) << k << " " << j;
    }
  }
}

TEST(TaylorAbelPoisson, SingleModeAndPoissonCoincidence) {
  const auto e = FourierSeries::exponential(5);
  const auto a = taylor_abel_poisson(e, SmoothingParams(0.8, 3));
  EXPECT_NEAR(std::abs(a[5] - lambda_multiplier(5, 3, 0.8)), 0.0, 1e-15);

  const auto f = random_real_series(12, 1);
  EXPECT_EQ(max_coefficient_difference(taylor_abel_poisson(f, SmoothingParams(0.7, 1)),
                                       poisson_mean(f, 0.7)),
            0.0);
  const auto c2 = taylor_abel_poisson(FourierSeries::cosine(2), SmoothingParams(0.5, 2));
  EXPECT_LT(max_coefficient_difference(c2, FourierSeries::cosine(2, 0.75)), 1e-15);
}

TEST(TaylorAbelPoisson, ProjectionAndContraction) {
  const auto low = random_real_series(3, 2);
  EXPECT_EQ(max_coefficient_difference(taylor_abel_poisson(low, SmoothingParams(0.2, 4)), low), 0.0);
  const auto f = random_real_series(20, 3);
  EXPECT_LE(coefficient_l2_norm(taylor_abel_poisson(f, SmoothingParams(0.6, 2))),
            coefficient_l2_norm(f));
}

TEST(TaylorAbelPoisson, Commutes) {
  const auto f = random_real_series(15, 4);
  const SmoothingParams a(0.3, 2), b(0.8, 4);
  EXPECT_LT(max_coefficient_difference(taylor_abel_poisson(taylor_abel_poisson(f, a), b),
                                       taylor_abel_poisson(taylor_abel_poisson(f, b), a)),
            1e-15);
}

TEST(TaylorAbelPoisson, SaturationSharpness) {
  for (int r = 1; r <= 4; ++r) {
    for (double rho : {0.9, 0.95, 0.99, 0.999}) {
      const double err = norm(approximation_defect(FourierSeries::cosine(r), SmoothingParams(rho, r)),
                              kInfinity);
      EXPECT_NEAR(err, std::pow(1 - rho, r), 1e-12);
    }
  }
}

TEST(SmoothingParams, Validation) {
  EXPECT_THROW(SmoothingParams(1.0, 1), InvalidParameter);
  EXPECT_THROW(SmoothingParams(-0.1, 1), InvalidParameter);
  EXPECT_THROW(SmoothingParams(0.5, 0), InvalidParameter);
}

TEST(PoissonMean, Examples) {
  const auto f = random_real_series(6, 5);
  const auto zero = poisson_mean(f, 0.0);
  EXPECT_EQ(zero[0], f[0]);
  EXPECT_EQ(coefficient_l1_norm(zero) - std::abs(f[0]), 0.0);
  EXPECT_LT(max_coefficient_difference(poisson_mean(FourierSeries::cosine(1), 0.9),
                                       FourierSeries::cosine(1, 0.9)),
            1e-16);
}

TEST(PoissonMean, GeometricClosedForm) {
  const int K = 40;
  std::vector<Complex> c(2 * K + 1);
  for (int k = -K; k <= K; ++k) c[k + K] = std::pow(0.5, std::abs(k));
  const auto mean = poisson_mean(FourierSeries(K, c), 0.8);
  EXPECT_NEAR(mean[3].real(), std::pow(0.4, 3), 1e-16);
  const auto g = synthesize(mean, 128);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.node(j);
    const double closed = (1 - 0.16) / (1 - 0.8 * std::cos(x) + 0.16);
    EXPECT_NEAR(g[j].real(), closed, 1e-9);
  }
}

TEST(PoissonKernel, Examples) {
  const auto zero = poisson_kernel_values(0.0, 16);
  for (std::size_t j = 0; j < 16; ++j) EXPECT_NEAR(zero[j].real(), 1.0, 1e-15);
  const auto k9 = poisson_kernel_values(0.9, 256);
  EXPECT_NEAR(lp_norm(k9, 1.0), 1.0, 1e-10);
  for (std::size_t j = 0; j < 256; ++j) EXPECT_GT(k9[j].real(), 0.0);
  EXPECT_NEAR(poisson_kernel_values(0.5, 8)[0].real(), 3.0, 1e-15);
}

TEST(RadialDerivative, Examples) {
  EXPECT_LT(max_coefficient_difference(radial_derivative(FourierSeries::exponential(3), 2),
                                       FourierSeries::exponential(3, 6.0)),
            1e-15);
  EXPECT_EQ(coefficient_l1_norm(radial_derivative(random_real_series(3, 6), 4)), 0.0);
  const auto f = random_real_series(8, 7);
  EXPECT_EQ(max_coefficient_difference(radial_derivative(f, 0), f), 0.0);
  EXPECT_LT(max_coefficient_difference(radial_derivative(radial_derivative(f, 2), 3),
                                       radial_derivative(radial_derivative(f, 3), 2)),
            1e-12);
}

TEST(PoissonRhoPartial, Examples) {
  const auto f = random_real_series(9, 8);
  EXPECT_EQ(max_coefficient_difference(poisson_rho_partial(f, 0.4, 0), poisson_mean(f, 0.4)), 0.0);
  EXPECT_LT(max_coefficient_difference(poisson_rho_partial(FourierSeries::cosine(2), 0.5, 1),
                                       FourierSeries::cosine(2)),
            1e-15);
  const auto lhs = radial_derivative(poisson_mean(f, 0.7), 3);
  const auto rhs = poisson_rho_partial(f, 0.7, 3) * std::pow(0.7, 3);
  EXPECT_LT(max_coefficient_difference(lhs, rhs), 1e-12);
  // Limit form at rho = 0 keeps only |k| = m.
  const auto at0 = poisson_rho_partial(f, 0.0, 2);
  EXPECT_LT(std::abs(at0[2] - 2.0 * f[2]), 1e-15);
  EXPECT_EQ(at0[3], Complex());
}

TEST(Lemma1, TaylorFormMatchesMultiplier) {
  const auto f = random_real_series(10, 9);
  for (int r = 1; r <= 5; ++r) {
    for (double rho : {0.1, 0.5, 0.9, 0.99}) {
      const SmoothingParams params(rho, r);
      const auto taylor = lemma1_taylor_form(f, params, 64);
      EXPECT_LT(max_abs_difference(taylor, synthesize(taylor_abel_poisson(f, params), 64)), 1e-10);
    }
  }
  const auto c3 = lemma1_taylor_form(FourierSeries::cosine(3), SmoothingParams(0.6, 2), 16);
  EXPECT_NEAR(c3[0].real(), 0.648, 1e-14);
  EXPECT_THROW(lemma1_taylor_form(f, SmoothingParams(0.5, 2), 20), PreconditionViolation);
}

TEST(HolomorphicSplit, Examples) {
  const auto [f1, f2] = holomorphic_split(FourierSeries::cosine(1));
  EXPECT_NEAR(std::abs(f1[1] - 0.5), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(f2[1] - 0.5), 0.0, 1e-16);
  EXPECT_EQ(f1[0], Complex());
  const auto one = holomorphic_split(FourierSeries::constant(1.0));
  EXPECT_EQ(one.f1[0], Complex(0.5));
  EXPECT_EQ(one.f2[0], Complex(0.5));
}

TEST(HolomorphicSplit, Recombination) {
  const auto f = random_real_series(7, 10);
  const auto pair = holomorphic_split(f);
  const double rho = 0.65;
  EXPECT_LT(max_abs_difference(holomorphic_recombination(pair, rho, 0, 32),
                               synthesize(poisson_mean(f, rho), 32)),
            1e-10);
  for (int m = 1; m <= 3; ++m) {
    EXPECT_LT(max_abs_difference(holomorphic_recombination(pair, rho, m, 32),
                                 synthesize(poisson_rho_partial(f, rho, m), 32)),
              1e-10);
  }
}

TEST(Leis, Examples) {
  const auto f = random_real_series(6, 11);
  EXPECT_EQ(max_coefficient_difference(leis_transform(f, 0.4, 1), f), 0.0);
  EXPECT_LT(max_coefficient_difference(leis_transform(FourierSeries::exponential(2), 0.9, 2),
                                       FourierSeries::exponential(2, 0.8)),
            1e-15);
  // Taylor remainder of rho^m at 1 is O((1-rho)^r).
  for (int r = 1; r <= 3; ++r) {
    const auto e = FourierSeries::exponential(6);
    const double a = std::abs((poisson_mean(e, 0.99) - leis_transform(e, 0.99, r))[6]);
    const double b = std::abs((poisson_mean(e, 0.999) - leis_transform(e, 0.999, r))[6]);
    EXPECT_NEAR(std::log10(a / b), r, 0.05);
  }
}

TEST(ButzerSunouchi, Examples) {
  const auto f = random_real_series(6, 12);
  EXPECT_EQ(max_coefficient_difference(butzer_sunouchi(f, 0.4, 1), f), 0.0);
  EXPECT_LT(max_coefficient_difference(butzer_sunouchi(FourierSeries::exponential(1), std::exp(-0.1), 2),
                                       FourierSeries::exponential(1, 0.9)),
            1e-15);
  EXPECT_THROW(butzer_sunouchi(f, 0.0, 2), InvalidParameter);
}

TEST(ButzerSunouchi, LadderFormAgrees) {
  // sum_m (-1)^{floor((m+1)/2)} f^{{m}} t^m / m! equals the multiplier form.
  const auto f = random_real_series(8, 13);
  const double rho = 0.83, t = -std::log(rho);
  for (int r = 1; r <= 5; ++r) {
    FourierSeries ladder(8);
    double w = 1.0;
    for (int m = 0; m < r; ++m) {
      if (m > 0) w *= t / m;
      const double sign = ((m + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
      ladder += conjugate_derivative_ladder(f, m) * (sign * w);
    }
    EXPECT_LT(max_coefficient_difference(ladder, butzer_sunouchi(f, rho, r)), 1e-12) << r;
  }
}

TEST(MpQuantity, Examples) {
  const auto f = random_real_series(5, 14);
  EXPECT_NEAR(m_p_quantity(f, 0.6, 0, 2.0), norm(poisson_mean(f, 0.6), 2.0), 1e-14);
  for (int k : {3, 5}) {
    for (int r : {1, 2, 3}) {
      EXPECT_NEAR(m_p_quantity(FourierSeries::cosine(k), 0.8, r, kInfinity),
                  falling_factorial(k, r) * std::pow(0.8, k), 1e-9);
    }
  }
  const double rho = 0.7;
  EXPECT_NEAR(m_p_quantity(f, rho, 2, 2.0),
              std::pow(rho, 2) * norm(poisson_rho_partial(f, rho, 2), 2.0), 1e-10);
}

TEST(MpQuantity, Lemma3ProofBound) {
  const auto f = random_real_series(10, 15);
  for (int r = 1; r <= 3; ++r) {
    for (double rho : {0.5, 0.9, 0.99}) {
      for (double p : {1.0, 2.0, kInfinity}) {
        EXPECT_LE(m_p_quantity(f, rho, r, p),
                  2.0 * falling_factorial(r, r) * norm(f, p) / std::pow(1 - rho, r));
      }
    }
  }
}

TEST(Lemma3, BernsteinBound) {
  EXPECT_EQ(lemma3_constant(1), 1.0 * (16 - 4) / 3);
  const auto f = random_real_series(12, 16);
  for (int r = 1; r <= 3; ++r) {
    for (double rho : {0.5, 0.75, 0.9, 0.99}) {
      for (double p : {1.0, 2.0, kInfinity}) {
        const double lhs = norm(radial_derivative(taylor_abel_poisson(f, SmoothingParams(rho, r)), r), p);
        EXPECT_LE(lhs, lemma3_constant(r) * norm(f, p) / std::pow(1 - rho, r));
      }
    }
  }
}

TEST(Lemma4, IntegralRepresentation) {
  // Degree below r: both sides vanish.
  const auto low = random_real_series(2, 17);
  EXPECT_EQ(integral_representation_residual(low, SmoothingParams(0.5, 3), 2.0, 1e-12).residual, 0.0);

  // Single mode: the integral's coefficient is 1 - lambda.
  for (int m : {3, 7}) {
    const SmoothingParams params(0.8, 3);
    const auto rep = integral_representation(FourierSeries::exponential(m), params, 1e-13);
    EXPECT_NEAR(rep.series[m].real(), lambda_complement(m, 3, 0.8), 1e-13);
  }

  const auto f = random_real_series(10, 18);
  const auto res = integral_representation_residual(f, SmoothingParams(0.8, 3), kInfinity, 1e-9);
  EXPECT_LE(res.residual, 1e-8);
  EXPECT_TRUE(res.converged);
}
