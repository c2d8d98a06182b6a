// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"
#include "fracscat/multiplier.hpp"
#include "fracscat/rng.hpp"
#include "test_support.hpp"

using namespace fracscat;
using fracscat::test::gaussian;
using fracscat::test::rel_distance;

namespace
{

Field random_complex(const GridSpec &g, std::uint64_t seed)
{
  Rng rng(seed);
  Field u(g);
  for (auto &z : u.values())
    z = cplx(rng.normal(), rng.normal());
  return u;
}

}  // namespace

TEST(Grid, RejectsBadInput)
{
  EXPECT_THROW(GridSpec(1, 8.0, 1000), ValidationError);
  EXPECT_THROW(GridSpec(1, -1.0, 64), ValidationError);
  EXPECT_THROW(GridSpec(4, 8.0, 16), ValidationError);
  EXPECT_THROW(GridSpec(1, 8.0, 1), ValidationError);
}

TEST(Grid, DerivedQuantities)
{
  GridSpec g(2, 4.0, 64);
  EXPECT_EQ(g.cells(), 64u * 64u);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.125);
  EXPECT_DOUBLE_EQ(g.freq_step(), std::numbers::pi / 4.0);
  EXPECT_DOUBLE_EQ(g.nyquist(), std::numbers::pi / 0.125);
  EXPECT_DOUBLE_EQ(g.coordinate(32), 0.0);
  EXPECT_EQ(g.wavenumber(40), 40 - 64);
  for (std::size_t c : {std::size_t{0}, std::size_t{77}, g.cells() - 1})
    EXPECT_EQ(g.ravel(g.unravel(c)), c);
}

TEST(Transform, KroneckerDeltaHasFlatSpectrum)
{
  GridSpec g(1, 8.0, 128);
  Field u(g);
  u[64] = 1.0;  // x = 0
  Field uh = forward_transform(u);
  for (auto z : uh.values())
    EXPECT_NEAR(std::abs(z - cplx(g.spacing())), 0.0, 1e-14);
}

TEST(Transform, RoundTrip)
{
  for (int dim : {1, 2, 3})
  {
    GridSpec g(dim, 5.0, dim == 3 ? 16 : 64);
    Field u = random_complex(g, 11 + dim);
    EXPECT_LT(rel_distance(inverse_transform(forward_transform(u)), u), 1e-12) << dim;
  }
}

TEST(Transform, GaussianMatchesClosedForm)
{
  GridSpec g(1, 16.0, 256);
  Field uh = forward_transform(gaussian(g));
  for (int i = 0; i < g.points(); ++i)
  {
    const double xi = g.frequency(i);
    const double exact = std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * xi * xi);
    ASSERT_NEAR(std::abs(uh[i] - cplx(exact)), 0.0, 1e-8) << xi;
  }
}

TEST(Transform, Plancherel)
{
  GridSpec g(2, 3.0, 32);
  Field u = random_complex(g, 5);
  Field uh = forward_transform(u);
  EXPECT_NEAR(l2_norm(uh) / l2_norm(u), 1.0, 1e-12);
}

TEST(Transform, TagChecks)
{
  GridSpec g(1, 4.0, 32);
  Field u(g);
  EXPECT_THROW(inverse_transform(u), TagError);
  EXPECT_THROW(forward_transform(forward_transform(u)), TagError);
  Field v(GridSpec(1, 4.0, 64));
  EXPECT_THROW(u + v, GridMismatchError);
}

TEST(Transform, DtftAgreesOnLattice)
{
  GridSpec g(1, 6.0, 64);
  Field u = gaussian(g, 0.7, 0.3);
  Field uh = forward_transform(u);
  for (int i : {0, 3, 60})
  {
    const cplx d = dtft(u, Point{g.frequency(i), 0.0, 0.0});
    EXPECT_NEAR(std::abs(d - uh[i]), 0.0, 1e-12);
  }
}

TEST(FracLaplacian, PlaneWavesAreEigenfunctions)
{
  GridSpec g(1, 10.0, 128);
  for (double s : {0.5, 1.0, 2.0})
  {
    for (int k : {1, -7, 20})
    {
      Field w = test::plane_wave(g, k);
      Field expected = std::pow(std::abs(k * g.freq_step()), s) * w;
      EXPECT_LT(rel_distance(frac_laplacian(s, w), expected), 1e-12);
    }
  }
}

TEST(FracLaplacian, SecondOrderAgreesWithFiniteDifferences)
{
  GridSpec g(1, 16.0, 1024);
  Field u = test::poly_bump(g, 8.0, 8);
  Field lap = frac_laplacian(2.0, u);
  const double h = g.spacing();
  Field fd(g);
  const int n = g.points();
  for (int i = 0; i < n; ++i)
    fd[i] = (2.0 * u[i] - u[(i + 1) % n] - u[(i + n - 1) % n]) / (h * h);
  EXPECT_LT(rel_distance(lap, fd), 1e-4);
}

TEST(Multiplier, CompositionIsProductOfSymbols)
{
  GridSpec g(2, 4.0, 32);
  Field u = random_complex(g, 3);
  MultiplierSpec a = FracLaplacian{0.7}, b = BesselSymbol{-1.3};
  Field ab = apply_multiplier(a, apply_multiplier(b, u));
  Field ba = apply_multiplier(b, apply_multiplier(a, u));
  EXPECT_LT(rel_distance(ab, ba), 1e-12);
  auto ta = symbol_table(a, g), tb = symbol_table(b, g);
  std::vector<cplx> prod(ta.size());
  for (std::size_t i = 0; i < ta.size(); ++i)
    prod[i] = ta[i] * tb[i];
  EXPECT_LT(rel_distance(apply_table(prod, u), ab), 1e-12);
}

TEST(Multiplier, RealEvenInputsStayReal)
{
  GridSpec g(1, 8.0, 128);
  Field out = frac_laplacian(1.3, gaussian(g));
  double imag = 0.0;
  for (auto z : out.values())
    imag = std::max(imag, std::abs(z.imag()));
  EXPECT_LT(imag, 1e-12 * max_abs(out));
}

TEST(Multiplier, ResolventOnSpectrumIsRejected)
{
  EXPECT_THROW(validate(ResolventSymbol{1.0, cplx(2.0, 0.0)}), DomainError);
  EXPECT_NO_THROW(validate(ResolventSymbol{1.0, cplx(-2.0, 0.0)}));
  EXPECT_THROW(validate(FracLaplacian{0.0}), ValidationError);
  EXPECT_THROW(validate(LpBlock{-1}), ValidationError);
}

TEST(Bessel, IdentityAndInverse)
{
  GridSpec g(1, 8.0, 128);
  Field u = random_complex(g, 9);
  EXPECT_LT(rel_distance(bessel_potential(0.0, u), u), 1e-14);
  EXPECT_LT(rel_distance(bessel_potential(-1.5, bessel_potential(1.5, u)), u), 1e-12);
}

TEST(Bessel, KernelPositiveAndDecaying)
{
  const double L = 32.0;
  double prev_x = 1.0, prev_log = std::log(bessel_kernel(1.0, 1, 1.0));
  for (double x = 1.25; x < 0.5 * L; x += 0.25)
  {
    const double G = bessel_kernel(1.0, 1, x);
    ASSERT_GT(G, 0.0) << x;
    const double lg = std::log(G);
    EXPECT_LE((lg - prev_log) / (x - prev_x), -0.5) << x;
    prev_x = x;
    prev_log = lg;
  }
}

TEST(Bessel, KernelClosedForms)
{
  for (double r : {0.3, 1.0, 4.0})
  {
    EXPECT_NEAR(bessel_kernel(2.0, 1, r), 0.5 * std::exp(-r), 1e-14);
    EXPECT_NEAR(bessel_kernel(1.0, 1, r), std::cyl_bessel_k(0.0, r) / std::numbers::pi, 1e-14);
    EXPECT_NEAR(bessel_kernel(2.0, 3, r), std::exp(-r) / (4.0 * std::numbers::pi * r), 1e-14);
  }
  EXPECT_THROW(bessel_kernel(1.0, 1, 0.0), DomainError);
}

TEST(Bessel, LatticeKernelMatchesExponential)
{
  // J_{-2} of a unit-mass delta is e^{-|x|}/2 away from the origin.
  GridSpec g(1, 32.0, 1024);
  Field delta(g);
  delta[512] = 1.0 / g.spacing();
  Field G = bessel_potential(-2.0, delta);
  for (int i = 512 + 32; i < 1024; ++i)
  {
    const double x = g.coordinate(i);
    ASSERT_NEAR(G[i].real(), 0.5 * std::exp(-x), 1e-5) << x;
  }
}

TEST(LittlewoodPaley, PlaneWaveHitsOneOrTwoBlocks)
{
  // freq_step = 1/16, so 1.5 * 2^j0 is a lattice frequency.
  GridSpec g(1, 16.0 * std::numbers::pi, 1024);
  for (int j0 : {1, 2, 4})
  {
    const int k = static_cast<int>(std::lround(1.5 * std::ldexp(1.0, j0) * 16.0));
    Field w = test::plane_wave(g, k);
    Field sum(g);
    for (int j = 0; j <= lp_max_block(g); ++j)
    {
      Field b = lp_block(j, w);
      if (j != j0 && j != j0 + 1)
        EXPECT_LT(l2_norm(b), 1e-12 * l2_norm(w)) << j;
      sum += b;
    }
    EXPECT_LT(rel_distance(sum, w), 1e-12);
  }
}

TEST(LittlewoodPaley, PartitionOfUnity)
{
  GridSpec g(2, 6.0, 64);
  Field u = random_complex(g, 21);
  Field sum(g);
  std::vector<cplx> total(g.cells(), 0.0);
  for (int j = 0; j <= lp_max_block(g); ++j)
  {
    sum += lp_block(j, u);
    auto t = symbol_table(LpBlock{j}, g);
    for (std::size_t i = 0; i < t.size(); ++i)
      total[i] += t[i];
  }
  EXPECT_LT(rel_distance(sum, u), 1e-10);
  for (auto v : total)
    ASSERT_NEAR(std::abs(v - 1.0), 0.0, 1e-12);
}
