// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "fracdisc/conditions.hpp"
#include "fracdisc/solver.hpp"
#include "oracles.hpp"

using namespace fracdisc;

namespace {
constexpr double kInvGammaHalf = 0.56418958354775628695;

BivariateSeries linear_t(Complex c) {
  BivariateSeries F = BivariateSeries::zero(1, 2);
  F.at(0, 1) = c;
  return F;
}
}  // namespace

TEST_CASE("check_condition_II accepts matched constant terms", "[conditions]") {
  // t / Gamma(1.5) with b = 0: the constant term is zero, as required.
  const BivariateSeries F = linear_t(Complex{1.1283791670955126, 0.0});
  const ConditionIIReport rep = check_condition_II(F, Complex{0.0, 0.0}, 0.5);
  REQUIRE(rep.pass);
  REQUIRE(rep.gap <= 1e-15);

  const ConditionIIReport zero_rep =
      check_condition_II(BivariateSeries::zero(1, 1), Complex{0.0, 0.0}, 0.5);
  REQUIRE(zero_rep.pass);
  REQUIRE(zero_rep.gap == 0.0);
}

TEST_CASE("check_condition_II flags an unmatchable constant", "[conditions]") {
  BivariateSeries F = linear_t(Complex{0.5, 0.0});
  F.at(0, 0) = Complex{1.0, 0.0};
  const ConditionIIReport rep = check_condition_II(F, Complex{0.0, 0.0}, 0.5);
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.gap == 1.0);
}

TEST_CASE("check_condition_II handles nonzero initial values", "[conditions]") {
  // F(z,t) = t / Gamma(0.5) satisfies F(0,b) = b / Gamma(0.5) for every b.
  const BivariateSeries F = linear_t(Complex{kInvGammaHalf, 0.0});
  const ConditionIIReport rep = check_condition_II(F, Complex{1.0, 0.0}, 0.5);
  REQUIRE(rep.pass);
  REQUIRE(rep.gap <= 1e-15);
}

TEST_CASE("check_regularized_compat requires F(0,b) = 0", "[conditions]") {
  // F = t - 1 vanishes at t = b = 1; F = t does not.
  BivariateSeries shifted = linear_t(Complex{1.0, 0.0});
  shifted.at(0, 0) = Complex{-1.0, 0.0};
  REQUIRE(check_regularized_compat(shifted, Complex{1.0, 0.0}).pass);

  const CompatReport bad =
      check_regularized_compat(linear_t(Complex{1.0, 0.0}), Complex{1.0, 0.0});
  REQUIRE_FALSE(bad.pass);
  REQUIRE(bad.value == 1.0);

  REQUIRE(check_regularized_compat(linear_t(Complex{1.0, 0.0}),
                                   Complex{0.0, 0.0})
              .pass);
}

TEST_CASE("recentering preserves the compatibility gap", "[conditions]") {
  std::mt19937 rng(83u);
  const double a = 0.5;
  for (int trial = 0; trial < 10; ++trial) {
    BivariateSeries F = BivariateSeries::zero(3, 3);
    for (Complex& c : F.c) {
      std::uniform_real_distribution<double> d(-1.0, 1.0);
      c = Complex{d(rng), d(rng)};
    }
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const Complex b{d(rng), d(rng)};

    const double gap_original = check_condition_II(F, b, a).gap;
    const BivariateSeries H = shift_to_homogeneous(F, b, a);
    const double gap_shifted = check_condition_II(H, Complex{0.0, 0.0}, a).gap;
    REQUIRE(std::abs(gap_original - gap_shifted) <=
            1e-12 * (1.0 + gap_original));
  }
}

TEST_CASE("a forced match recenters to a passing problem", "[conditions]") {
  const double a = 0.5;
  const Complex b{0.7, -0.2};
  BivariateSeries F = BivariateSeries::zero(2, 3);
  F.at(1, 0) = Complex{0.3, 0.1};
  F.at(0, 1) = Complex{0.25, 0.0};
  F.at(0, 2) = Complex{-0.1, 0.05};
  // Choose the constant so F(0,b) = b / Gamma(1-a) exactly as evaluated.
  F.at(0, 0) = b * gamma_ratio(1.0, 1.0 - a) - F.at(0, 1) * b -
               F.at(0, 2) * b * b;
  REQUIRE(check_condition_II(F, b, a).pass);
  const BivariateSeries H = shift_to_homogeneous(F, b, a);
  REQUIRE(check_condition_II(H, Complex{0.0, 0.0}, a).pass);
}

TEST_CASE("check_growth verifies a tight power envelope", "[conditions]") {
  BivariateSeries F = BivariateSeries::zero(1, 3);
  F.at(0, 2) = Complex{1.0, 0.0};
  GrowthEnvelope env;
  env.c = 1.0;
  env.n0 = 2;
  env.g = FracPowerSeries::zero(1);
  env.g_bound = 0.0;
  const GrowthReport rep =
      check_growth(F, env, Complex{0.0, 0.0}, GrowthMode::Absolute);
  REQUIRE(rep.pass);
  REQUIRE(rep.worst_margin <= 1e-12);
}

TEST_CASE("check_growth accepts the equality case through g", "[conditions]") {
  BivariateSeries F = BivariateSeries::zero(2, 1);
  F.at(1, 0) = Complex{1.0, 0.0};  // F(z,t) = z
  GrowthEnvelope env;
  env.c = 0.0;
  env.n0 = 1;
  env.g = FracPowerSeries::zero(2);
  env.g.coeffs[1] = Complex{1.0, 0.0};  // g(z) = z
  env.g_bound = 1.0;
  const GrowthReport rep =
      check_growth(F, env, Complex{0.0, 0.0}, GrowthMode::Absolute);
  REQUIRE(rep.pass);
  REQUIRE(std::abs(rep.worst_margin) <= 1e-12);
}

TEST_CASE("check_growth measures the violation margin", "[conditions]") {
  const BivariateSeries F = linear_t(Complex{2.0, 0.0});
  GrowthEnvelope env;
  env.c = 1.0;
  env.n0 = 1;
  env.g = FracPowerSeries::zero(1);
  env.g_bound = 0.0;
  const GrowthReport rep =
      check_growth(F, env, Complex{0.0, 0.0}, GrowthMode::Absolute);
  REQUIRE_FALSE(rep.pass);
  REQUIRE(std::abs(rep.worst_margin - 1.0) <= 1e-12);
}

TEST_CASE("check_growth enforces minimum sampling", "[conditions]") {
  GrowthEnvelope env;
  env.g = FracPowerSeries::zero(1);
  REQUIRE_THROWS_AS(check_growth(linear_t(Complex{1.0, 0.0}), env,
                                 Complex{0.0, 0.0}, GrowthMode::Absolute, 4,
                                 16),
                    std::invalid_argument);
}

TEST_CASE("check_condition_I_finite screens non-finite coefficients",
          "[conditions]") {
  REQUIRE(check_condition_I_finite(linear_t(Complex{1.0, 0.0})));
  BivariateSeries bad = linear_t(Complex{1.0, 0.0});
  bad.at(0, 0) = Complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
  REQUIRE_FALSE(check_condition_I_finite(bad));
}

TEST_CASE("the solver refuses exactly when the gate fails", "[conditions]") {
  ProblemSpec failing;
  failing.rhs = linear_t(Complex{0.5, 0.0});
  failing.rhs.at(0, 0) = Complex{1.0, 0.0};
  REQUIRE_FALSE(check_condition_II(failing.rhs, failing.initial, 0.5).pass);
  REQUIRE(solve_picard(failing).status == SolveStatus::ConditionIIViolated);

  ProblemSpec passing = failing;
  passing.rhs.at(0, 0) = Complex{0.0, 0.0};
  REQUIRE(check_condition_II(passing.rhs, passing.initial, 0.5).pass);
  REQUIRE(solve_picard(passing).status == SolveStatus::Converged);
}
