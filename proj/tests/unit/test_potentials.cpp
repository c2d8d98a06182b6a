// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "fracscat/dyadic.hpp"
#include "fracscat/error.hpp"
#include "fracscat/fit.hpp"
#include "fracscat/potential.hpp"
#include "test_support.hpp"

using namespace fracscat;

TEST(Evaluate, FamilyValues)
{
  EXPECT_DOUBLE_EQ(PotentialSpec(PowerTail{1.0, 2.0}).value_at({0.0, 0.0, 0.0}), 1.0);
  const AnnulusTail at{1.0, EpsilonRule{1.0, 1.0}};
  EXPECT_NEAR(PotentialSpec(at).value_at({1.5, 0.0, 0.0}), std::pow(2.5, -1.5), 1e-15);
  EXPECT_DOUBLE_EQ(PotentialSpec(GaussianWell{2.0, 1.0}).value_at({0.0, 0.0, 0.0}), -2.0);
  EXPECT_DOUBLE_EQ(PotentialSpec(CompactBump{1.0, 0.3}).value_at({1.5, 0.0, 0.0}), 0.0);

  GridSpec g(1, 8.0, 64);
  Field V = evaluate(PotentialSpec(PowerTail{0.7, 1.3}), g);
  Field W = evaluate(PotentialSpec(SampledPotential{real_samples(V), g}), g);
  EXPECT_EQ(distance(V, W), 0.0);
  for (auto z : V.values())
    EXPECT_EQ(z.imag(), 0.0);
}

TEST(Evaluate, Flags)
{
  EXPECT_TRUE(PotentialSpec(PowerTail{1.0, 2.0}).radial_monotone());
  EXPECT_TRUE(PotentialSpec(PowerTail{-1.0, 2.0}).sign_definite());
  EXPECT_TRUE(PotentialSpec(PowerTail{0.0, 2.0}).is_zero());
  EXPECT_FALSE(PotentialSpec(GaussianWell{1.0, 1.0}).is_zero());
}

TEST(ChooseP, CaseSplit)
{
  EXPECT_DOUBLE_EQ(choose_p(1.0, 3), 3.0);
  EXPECT_DOUBLE_EQ(choose_p(2.0, 1), 2.0);
  EXPECT_DOUBLE_EQ(choose_p(1.0, 2), 2.1);
  EXPECT_DOUBLE_EQ(choose_p(1.0, 2, 0.25), 2.25);
  EXPECT_DOUBLE_EQ(choose_p(0.5, 2), 4.0);
}

TEST(AnnulusM, ZeroAndCompact)
{
  GridSpec g(1, 256.0, 4096);
  DyadicLayout lay(g);
  EXPECT_EQ(annulus_M(Field(g), lay, 4, 2.0).value, 0.0);
  Field bump = evaluate(PotentialSpec(CompactBump{1.0, 1.0}), g);
  for (int j = 3; j < lay.j_max(); ++j)
    EXPECT_EQ(annulus_M(bump, lay, j, 2.0).value, 0.0) << j;
  EXPECT_GT(annulus_M(bump, lay, 1, 2.0).value, 0.0);
}

TEST(AnnulusM, PowerTailMatchesAnalyticIntegral)
{
  GridSpec g(1, 256.0, 4096);
  DyadicLayout lay(g);
  Field V = evaluate(PotentialSpec(PowerTail{1.0, 2.0}), g);
  double prev_ratio = 0.0;
  for (int j = 4; j <= 8; ++j)
  {
    const double R = DyadicLayout::radius(j - 1);
    // int_{R-1}^{R+1} (1+x)^{-4} dx
    const double exact = std::sqrt(((1.0 / std::pow(R, 3)) - 1.0 / std::pow(R + 2.0, 3)) / 3.0);
    const double M = annulus_M(V, lay, j, 2.0).value;
    EXPECT_NEAR(M / exact, 1.0, 1e-3) << j;
    const double ratio = M / std::pow(R, -2.0);
    EXPECT_GT(ratio, prev_ratio);
    prev_ratio = ratio;
  }
  EXPECT_NEAR(prev_ratio, std::sqrt(2.0), 0.05 * std::sqrt(2.0));
}

TEST(AnnulusM, RadialShortcutMatchesSweep)
{
  GridSpec g(1, 128.0, 2048);
  DyadicLayout lay(g);
  for (const PotentialSpec &V :
       {PotentialSpec(PowerTail{1.0, 1.5}), PotentialSpec(GaussianWell{1.0, 3.0})})
  {
    Field Vf = evaluate(V, g);
    for (int j = 1; j < lay.j_max(); ++j)
    {
      const double full = annulus_M(Vf, lay, j, 2.0, 1, false).value;
      const double quick = annulus_M(Vf, lay, j, 2.0, 1, true).value;
      EXPECT_NEAR(full, quick, 1e-10 * std::max(1.0, full)) << j;
    }
  }
}

TEST(ShortRange, PowerTailVerdicts)
{
  GridSpec g(1, 256.0, 4096);
  auto r2 = shortrange_series(PotentialSpec(PowerTail{1.0, 2.0}), g, 1.0);
  EXPECT_EQ(r2.verdict, RangeVerdict::short_range);
  EXPECT_NEAR(r2.tail_exponent, -1.0, 0.2);
  auto r1 = shortrange_series(PotentialSpec(PowerTail{1.0, 1.0}), g, 1.0);
  EXPECT_EQ(r1.verdict, RangeVerdict::not_short_range);
  auto ra = shortrange_series(PotentialSpec(AnnulusTail{1.0, EpsilonRule{1.0, 0.5}}), g, 1.0);
  EXPECT_EQ(ra.verdict, RangeVerdict::short_range);
  for (const auto *r : {&r2, &r1, &ra})
    for (std::size_t i = 1; i < r->partial_sums.size(); ++i)
      EXPECT_GE(r->partial_sums[i], r->partial_sums[i - 1]);
}

TEST(ShortRange, TooFewAnnuliIsInconclusive)
{
  GridSpec g(1, 4.0, 64);
  auto r = shortrange_series(PotentialSpec(PowerTail{1.0, 2.0}), g, 1.0);
  EXPECT_EQ(r.verdict, RangeVerdict::inconclusive);
}

TEST(ShortRange, EpsilonSeriesAgreesWithPotentialSeries)
{
  GridSpec g(1, 256.0, 4096);
  for (double power : {0.5, 1.0})
  {
    EpsilonRule rule{1.0, power};
    auto pot = shortrange_series(PotentialSpec(AnnulusTail{1.0, rule}), g, 1.0);
    auto eps = epsilon_series(rule, DyadicLayout(g).j_max() - 1);
    EXPECT_EQ(pot.verdict, eps.verdict) << power;
  }
}

TEST(OffDiag, ZeroAndCompact)
{
  GridSpec g(1, 64.0, 1024);
  DyadicLayout lay(g);
  EXPECT_EQ(offdiag_block_norm(Field(g), lay, 5, 2, 1.0), 0.0);
  Field bump = evaluate(PotentialSpec(CompactBump{1.0, 1.0}), g);
  EXPECT_EQ(offdiag_block_norm(bump, lay, 5, 2, 1.0), 0.0);
  EXPECT_EQ(offdiag_block_norm(bump, lay, 6, 3, 1.0), 0.0);
  EXPECT_THROW(offdiag_block_norm(bump, lay, 3, 4, 1.0), DomainError);
}

TEST(OffDiag, MonotoneInAbsoluteValue)
{
  GridSpec g(1, 64.0, 1024);
  DyadicLayout lay(g);
  Field V = Field::from_function(g, [](const Point &x) { return cplx(std::sin(x[0]) / (1.0 + x[0] * x[0])); });
  Field A = V;
  for (auto &z : A.values())
    z = std::abs(z);
  for (auto [j, k] : {std::pair{1, 4}, std::pair{5, 2}, std::pair{3, 6}})
    EXPECT_LE(offdiag_block_norm(V, lay, j, k, 1.0), offdiag_block_norm(A, lay, j, k, 1.0));
}

TEST(OffDiag, ExponentialDecayInRmax)
{
  GridSpec g(1, 64.0, 1024);
  DyadicLayout lay(g);
  Field V = evaluate(PotentialSpec(PowerTail{1.0, 2.0}), g);
  std::vector<double> R, y;
  for (int j = 1; j < lay.j_max(); ++j)
    for (int k = 1; k < lay.j_max(); ++k)
      if (std::abs(j - k) >= 2)
      {
        R.push_back(DyadicLayout::radius(std::max(j, k)));
        y.push_back(std::log(offdiag_block_norm(V, lay, j, k, 1.0)));
      }
  auto fit = fit_line(R, y);
  EXPECT_LE(fit.slope, -0.3);
}
