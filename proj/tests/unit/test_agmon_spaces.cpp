// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracscat/battery.hpp"
#include "fracscat/dyadic.hpp"
#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"
#include "fracscat/multiplier.hpp"
#include "fracscat/rng.hpp"
#include "fracscat/shell.hpp"
#include "test_support.hpp"

using namespace fracscat;

namespace
{

Field indicator(const GridSpec &g, double R)
{
  return Field::from_function(g, [=](const Point &x) { return cplx(std::abs(x[0]) < R ? 1.0 : 0.0); });
}

}  // namespace

TEST(Layout, RadiiAndMembership)
{
  GridSpec g(1, 64.0, 512);
  DyadicLayout lay(g);
  for (int j = 1; j < 10; ++j)
    EXPECT_DOUBLE_EQ(DyadicLayout::radius(j + 1), 2.0 * DyadicLayout::radius(j));
  EXPECT_EQ(DyadicLayout::radius(0), 0.0);
  // ties go to the inner annulus
  EXPECT_EQ(DyadicLayout::annulus_for_radius(1.0), 1);
  EXPECT_EQ(DyadicLayout::annulus_for_radius(1.0000001), 2);
  EXPECT_EQ(DyadicLayout::annulus_for_radius(4.0), 3);
  std::size_t total = 0;
  for (int j = 1; j <= lay.j_max(); ++j)
    total += lay.cells_in(j).size();
  EXPECT_EQ(total, g.cells());
  EXPECT_LT(DyadicLayout::radius(lay.j_max() - 1), g.half_width());
}

TEST(Norms, ZeroField)
{
  GridSpec g(1, 16.0, 256);
  DyadicLayout lay(g);
  Field z(g);
  EXPECT_EQ(b_norm(z, lay), 0.0);
  EXPECT_EQ(bstar_norm(z, lay), 0.0);
}

TEST(Norms, IndicatorsMatchAnalyticValues)
{
  // Cells are points; the indicator misses O(h) of mass at the edges.
  GridSpec g(1, 16.0, 16384);
  DyadicLayout lay(g);
  const double tol = 2.0 * g.spacing();
  EXPECT_NEAR(b_norm(indicator(g, 1.0), lay), std::sqrt(2.0), tol);
  EXPECT_NEAR(b_norm(indicator(g, 2.0), lay), std::sqrt(2.0) + 2.0, tol);
  EXPECT_NEAR(bstar_norm(indicator(g, 2.0), lay), std::sqrt(2.0), tol);
}

TEST(Norms, EmbeddingChainAndDuality)
{
  GridSpec g(1, 64.0, 1024);
  DyadicLayout lay(g);
  Rng rng(99);
  for (int k = 0; k < 60; ++k)
  {
    Field u = random_field(g, rng, k % 3);
    Field v = random_field(g, rng, (k + 1) % 3);
    const double l2 = l2_norm(u);
    EXPECT_LE(bstar_norm(u, lay), l2);
    EXPECT_LE(l2, b_norm(u, lay));
    EXPECT_LE(std::abs(inner(v, u)), bstar_norm(v, lay) * b_norm(u, lay));
  }
}

TEST(Norms, MonotoneUnderPointwiseIncrease)
{
  GridSpec g(1, 32.0, 512);
  DyadicLayout lay(g);
  Field u = test::gaussian(g, 3.0);
  Field w = u;
  for (auto &z : w.values())
    z *= 1.5;
  EXPECT_GT(b_norm(w, lay), b_norm(u, lay));
  EXPECT_GT(bstar_norm(w, lay), bstar_norm(u, lay));
}

TEST(Norms, BesselStarReducesToBstarAtZero)
{
  GridSpec g(1, 32.0, 1024);
  DyadicLayout lay(g);
  Rng rng(4);
  Field u = random_field(g, rng, 1);
  EXPECT_NEAR(bsstar_norm(u, 0.0, lay), bstar_norm(u, lay), 1e-14 * bstar_norm(u, lay));
  EXPECT_NEAR(bsstar_norm(u, 1.3, lay), bstar_norm(bessel_potential(1.3, u), lay), 1e-14);
}

TEST(Norms, BesselStarEmbeddingOnGaussians)
{
  GridSpec g(1, 32.0, 1024);
  DyadicLayout lay(g);
  for (double w : {0.5, 1.0, 2.0, 4.0})
  {
    Field u = test::gaussian(g, w, 1.0);
    for (double s : {0.5, 1.0})
      for (double sp : {1.5, 2.0})
        EXPECT_LE(bsstar_norm(u, s, lay), 2.0 * bsstar_norm(u, sp, lay));
  }
}

TEST(Weighted, UnitWeightAndMuOne)
{
  GridSpec g(1, 32.0, 1024);
  DyadicLayout lay(g);
  Field u = test::smooth_bump(g, 1.0);
  EXPECT_NEAR(weighted_bstar_norm(u, [](double) { return 1.0; }, lay), bstar_norm(u, lay), 1e-15);
  for (double s : {0.5, 2.0})
  {
    const double w = weighted_bstar_norm(u, mu_weight(s, 1.0), lay);
    EXPECT_GE(w, bstar_norm(u, lay));
    EXPECT_LE(w, std::pow(2.0, s + 0.5) * bstar_norm(u, lay));
  }
}

TEST(Weighted, PowerWeightStableUnderDoubling)
{
  const double s = 1.0;
  auto decaying = [](const GridSpec &g)
  { return Field::from_function(g, [](const Point &x) { return cplx(std::exp(-std::abs(x[0]))); }); };
  GridSpec g1(1, 64.0, 1024), g2(1, 128.0, 2048);
  const double a = weighted_bstar_norm(decaying(g1), power_weight(s + 0.5), DyadicLayout(g1));
  const double b = weighted_bstar_norm(decaying(g2), power_weight(s + 0.5), DyadicLayout(g2));
  EXPECT_TRUE(std::isfinite(a));
  EXPECT_NEAR(a / b, 1.0, 1e-10);
}

TEST(Norms, ZeroExtensionLeavesNormsUnchanged)
{
  GridSpec g1(1, 32.0, 512), g2(1, 64.0, 1024);
  Field u1 = test::smooth_bump(g1, 20.0);
  Field u2 = test::smooth_bump(g2, 20.0);
  EXPECT_NEAR(b_norm(u1, DyadicLayout(g1)), b_norm(u2, DyadicLayout(g2)), 1e-10);
  EXPECT_NEAR(bstar_norm(u1, DyadicLayout(g1)), bstar_norm(u2, DyadicLayout(g2)), 1e-10);
}

TEST(Shell, ZeroAndVanishingSymbol)
{
  GridSpec g(1, 256.0, 4096);
  auto shell = make_shell(g, 2.0, 1.0);
  ASSERT_EQ(shell.nodes.size(), 2u);
  EXPECT_DOUBLE_EQ(shell.radius, 1.0);
  Field z(g, Space::fourier);
  EXPECT_EQ(shell_trace(z, shell).l2_norm, 0.0);

  Field gh = forward_transform(test::gaussian(g, 2.0));
  Field fh = gh;
  for (std::size_t i = 0; i < fh.size(); ++i)
    fh[i] *= std::pow(g.frequency_norm(i), 2.0) - 1.0;
  EXPECT_LT(shell_trace(fh, shell).l2_norm, 1e-6 * max_abs(gh));
}

TEST(Shell, GaussianTraceRefinementOracle)
{
  const double exact = std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5);
  GridSpec coarse(1, 64.0, 1024), fine(1, 256.0, 4096);
  auto tc = shell_trace(forward_transform(test::gaussian(coarse)), make_shell(coarse, 2.0, 1.0));
  auto tf = shell_trace(forward_transform(test::gaussian(fine)), make_shell(fine, 2.0, 1.0));
  for (int k = 0; k < 2; ++k)
  {
    EXPECT_NEAR(std::abs(tc.values[k] - tf.values[k]), 0.0, 1e-6);
    EXPECT_NEAR(std::abs(tf.values[k] - exact), 0.0, 1e-6);
  }
}

TEST(Shell, Linearity)
{
  GridSpec g(1, 32.0, 512);
  auto shell = make_shell(g, 1.0, 1.3);
  Rng rng(17);
  Field a = forward_transform(random_field(g, rng, 0));
  Field b = forward_transform(random_field(g, rng, 1));
  const cplx c(0.3, -1.7);
  auto ta = shell_trace(a, shell), tb = shell_trace(b, shell);
  auto tab = shell_trace(a + c * b, shell);
  for (std::size_t k = 0; k < tab.values.size(); ++k)
    EXPECT_NEAR(std::abs(tab.values[k] - ta.values[k] - c * tb.values[k]), 0.0,
                1e-12 * (std::abs(ta.values[k]) + std::abs(tb.values[k]) + 1.0));
}

TEST(Shell, OutsideNyquistIsGuarded)
{
  GridSpec g(1, 8.0, 64);  // nyquist = 4 pi
  EXPECT_THROW(make_shell(g, 1.0, 20.0), GuardError);
  EXPECT_THROW(make_shell(g, 1.0, -1.0), ValidationError);
}

TEST(Shell, CircleWeightsSumToCircumference)
{
  GridSpec g(2, 16.0, 128);
  auto shell = make_shell(g, 2.0, 4.0);
  double sum = 0.0;
  for (double w : shell.weights)
    sum += w;
  EXPECT_NEAR(sum, 2.0 * std::numbers::pi * 2.0, 1e-12);
}
