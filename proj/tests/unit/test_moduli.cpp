#include <gtest/gtest.h>

#include <cmath>

#include "tapmeans/errors.hpp"
#include "tapmeans/moduli.hpp"

using namespace tapmeans;

TEST(Omega, Evaluation) {
  EXPECT_NEAR(omega_eval(ModulusFunction::power(0.5), 0.25), 0.5, 1e-15);
  EXPECT_EQ(omega_eval(ModulusFunction::power(0.5), 0.0), 0.0);
  EXPECT_EQ(omega_eval(ModulusFunction::power_log(1.0, 1.0), 0.0), 0.0);
  EXPECT_NEAR(omega_eval(ModulusFunction::power_log(1.0, 1.0), 0.5), 0.5 * (1 + std::log(2.0)), 1e-15);
  const auto tab = ModulusFunction::table({0.0, 0.5, 1.0}, {0.0, 0.2, 1.0});
  EXPECT_NEAR(tab(0.25), 0.1, 1e-15);
  EXPECT_NEAR(tab(0.75), 0.6, 1e-15);
  EXPECT_THROW(omega_eval(ModulusFunction::power(0.5), 1.5), InvalidParameter);
  EXPECT_THROW(omega_eval(ModulusFunction::power(0.5), -0.1), InvalidParameter);
}

TEST(Omega, RejectsInvalidModuli) {
  EXPECT_THROW(ModulusFunction::power(0.0), InvalidParameter);
  EXPECT_THROW(ModulusFunction::power_log(0.5, 1.0), InvalidParameter);
  EXPECT_THROW(ModulusFunction::table({0.0, 1.0}, {0.1, 1.0}), InvalidParameter);
  EXPECT_THROW(ModulusFunction::table({0.0, 0.5, 1.0}, {0.0, 0.5, 0.4}), InvalidParameter);
  EXPECT_THROW(ModulusFunction::table({0.0, 0.5}, {0.0, 0.5}), InvalidParameter);
}

TEST(Omega, LogAtMatchesLog) {
  const auto w = ModulusFunction::power_log(0.5, 0.5);
  for (double u : {-0.1, -1.0, -10.0}) EXPECT_NEAR(w.log_at(u), std::log(w(std::exp(u))), 1e-13);
  EXPECT_NEAR(ModulusFunction::power(0.3).log_at(-5000.0), -1500.0, 1e-9);
}

TEST(CheckZ, PowerRatioIsInverseAlpha) {
  for (double a : {0.3, 0.5, 0.7, 1.0, 1.5}) {
    const auto rep = check_Z(ModulusFunction::power(a));
    EXPECT_TRUE(rep.holds) << a;
    EXPECT_NEAR(rep.sup_ratio, 1.0 / a, 0.02 / a) << a;
  }
}

TEST(CheckZ, InverseLogFails) {
  const auto rep = check_Z(ModulusFunction::power_log(0.0, -1.0));
  EXPECT_FALSE(rep.holds);
}

TEST(CheckZ, PowerLogHolds) {
  EXPECT_TRUE(check_Z(ModulusFunction::power_log(1.0, 1.0)).holds);
}

TEST(CheckZn, PowerLimit) {
  for (int n : {1, 2, 3}) {
    for (double a : {0.3, 0.5, 0.7}) {
      const auto rep = check_Zn(ModulusFunction::power(a), n);
      EXPECT_TRUE(rep.holds);
      EXPECT_NEAR(rep.limit_ratio, 1.0 / (n - a), 0.02 / (n - a));
    }
  }
}

TEST(CheckZn, NearCriticalHolds) {
  const auto rep = check_Zn(ModulusFunction::power(0.99), 1);
  EXPECT_TRUE(rep.holds);
  EXPECT_NEAR(rep.limit_ratio, 100.0, 2.0);
}

TEST(CheckZn, CriticalPowerFails) {
  for (int n : {1, 2}) EXPECT_FALSE(check_Zn(ModulusFunction::power(n), n).holds);
  EXPECT_FALSE(check_Zn(ModulusFunction::power(1.5), 1).holds);
}

TEST(AlmostDecreasing, Examples) {
  const auto a = check_almost_decreasing(ModulusFunction::power(0.5), 1);
  EXPECT_TRUE(a.holds);
  EXPECT_NEAR(a.sup_ratio, 1.0, 1e-12);
  const auto b = check_almost_decreasing(ModulusFunction::power(1.0), 1);
  EXPECT_TRUE(b.holds);
  EXPECT_NEAR(b.sup_ratio, 1.0, 1e-12);
  EXPECT_FALSE(check_almost_decreasing(ModulusFunction::power(1.5), 1).holds);
}

TEST(Doubling, PowerConstant) {
  for (double a : {0.3, 0.5, 1.0, 2.0}) {
    const auto rep = check_doubling(ModulusFunction::power(a));
    EXPECT_TRUE(rep.holds);
    EXPECT_NEAR(rep.sup_ratio, std::pow(2.0, a), 1e-10);
  }
}

TEST(Doubling, PowerLogBounded) {
  const auto rep = check_doubling(ModulusFunction::power_log(1.0, 1.0));
  EXPECT_TRUE(rep.holds);
  EXPECT_LE(rep.sup_ratio, 2.0 + 1e-12);
}

TEST(Doubling, StepTableReportsGridSup) {
  const auto w = ModulusFunction::table({0.0, 0.25, 0.2500001, 1.0}, {0.0, 1e-6, 1.0, 1.0});
  const auto rep = check_doubling(w);
  EXPECT_GT(rep.sup_ratio, 1e4);
}

TEST(RateEnvelope, Examples) {
  EXPECT_NEAR(rate_envelope(ModulusFunction::power(0.5), 1, 1, 0.91), 0.3, 1e-15);
  EXPECT_NEAR(rate_envelope(ModulusFunction::power(0.5), 2, 1, 0.99), 0.001, 1e-15);
  EXPECT_THROW(rate_envelope(ModulusFunction::power(0.5), 1, 2, 0.9), InvalidParameter);
  EXPECT_THROW(rate_envelope(ModulusFunction::power(0.5), 2, 1, 1.0), InvalidParameter);
}

TEST(RateEnvelope, AboveSaturationFloor) {
  const auto w = ModulusFunction::power(0.5);
  EXPECT_GT(rate_envelope(w, 2, 1, 0.999) / std::pow(0.001, 2), rate_envelope(w, 2, 1, 0.99) / 1e-4);
}

TEST(Checks, Deterministic) {
  const auto w = ModulusFunction::power_log(0.5, 0.25);
  EXPECT_EQ(check_Zn(w, 1).sup_ratio, check_Zn(w, 1).sup_ratio);
  EXPECT_EQ(check_Z(w).sup_ratio, check_Z(w).sup_ratio);
}
