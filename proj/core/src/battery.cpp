// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/error.hpp"
#include "fracscat/battery.hpp"

#include <cmath>

#include "fracscat/fourier.hpp"

namespace fracscat
{

namespace
{

double r2(const Point &x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; }

double smooth_bump(double t) { return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; }

}  // namespace

std::vector<TestFunction> lap_battery(const GridSpec &grid, std::uint64_t seed)
{
  std::vector<TestFunction> out;
  out.push_back({"gauss", Field::from_function(grid, [](const Point &x)
                                               { return cplx(std::exp(-r2(x) / 2.0)); })});
  out.push_back({"gauss_wide", Field::from_function(grid, [](const Point &x)
                                                    { return cplx(std::exp(-r2(x) / 8.0)); })});
  out.push_back({"modgauss", Field::from_function(grid, [](const Point &x)
                                                  { return std::polar(std::exp(-r2(x) / 2.0), x[0]); })});

  Field band(grid, Space::fourier);
  for (std::size_t c = 0; c < grid.cells(); ++c)
  {
    band[c] = smooth_bump((grid.frequency_norm(c) - 1.0) / 0.5);
  }
  out.push_back({"annular", inverse_transform(band)});

  Field ind = Field::from_function(grid, [](const Point &x)
                                   { return cplx(r2(x) < 1.0 ? 1.0 : 0.0); });
  Field indhat = forward_transform(ind);
  for (std::size_t c = 0; c < grid.cells(); ++c)
  {
    const double k = grid.frequency_norm(c);
    indhat[c] *= std::exp(-k * k * 0.0625 / 2.0);
  }
  out.push_back({"indicator", inverse_transform(indhat)});

  Rng rng(seed);
  std::vector<Point> q(8);
  std::vector<cplx> a(8);
  for (int m = 0; m < 8; ++m)
  {
    for (int d = 0; d < grid.dim(); ++d)
    {
      q[m][d] = rng.uniform(-2.5, 2.5);
    }
    const double re = rng.normal();
    const double im = rng.normal();
    a[m] = cplx(re, im);
  }
  out.push_back({"random", Field::from_function(grid, [&](const Point &x)
                                                {
                                                  cplx acc = 0.0;
                                                  for (int m = 0; m < 8; ++m)
                                                  {
                                                    const double ph = q[m][0] * x[0] + q[m][1] * x[1] + q[m][2] * x[2];
                                                    acc += a[m] * std::polar(1.0, ph);
                                                  }
                                                  return acc * std::exp(-r2(x) / 8.0);
                                                })});
  return out;
}

std::vector<TestFunction> completeness_battery(const GridSpec &grid)
{
  std::vector<TestFunction> out;
  out.push_back({"gauss", Field::from_function(grid, [](const Point &x)
                                               { return cplx(std::exp(-r2(x) / 2.0)); })});
  out.push_back({"shifted_modulated", Field::from_function(grid, [](const Point &x)
                                                           {
                                                             const double d = x[0] - 3.0;
                                                             return std::polar(std::exp(-(d * d + r2(x) - x[0] * x[0]) / 2.0), 0.5 * x[0]);
                                                           })});
  out.push_back({"wide_cosine", Field::from_function(grid, [](const Point &x)
                                                     { return cplx(std::exp(-r2(x) / 8.0) * std::cos(1.5 * x[0])); })});
  out.push_back({"offset_narrow", Field::from_function(grid, [](const Point &x)
                                                       {
                                                         const double d = x[0] + 2.0;
                                                         return cplx(std::exp(-(d * d + r2(x) - x[0] * x[0])));
                                                       })});
  return out;
}

Field random_field(const GridSpec &grid, Rng &rng, int kind)
{
  Field out(grid);
  const double L = grid.half_width();
  if (kind == 0)
  {
    const double width = rng.uniform(0.5, 0.5 * L);
    const Point c{rng.uniform(-0.25 * L, 0.25 * L), 0.0, 0.0};
    for (std::size_t i = 0; i < out.size(); ++i)
    {
      auto x = grid.position(i);
      double d2 = 0.0;
      for (int a = 0; a < grid.dim(); ++a)
      {
        d2 += (x[a] - c[a]) * (x[a] - c[a]);
      }
      const double re = rng.normal();
      const double im = rng.normal();
      out[i] = cplx(re, im) * std::exp(-d2 / (2.0 * width * width));
    }
  }
  else if (kind == 1)
  {
    const double width = rng.uniform(1.0, 0.3 * L);
    std::vector<Point> q(5);
    std::vector<cplx> a(5);
    for (int m = 0; m < 5; ++m)
    {
      for (int d = 0; d < grid.dim(); ++d)
      {
        q[m][d] = rng.uniform(-3.0, 3.0);
      }
      const double re = rng.normal();
      const double im = rng.normal();
      a[m] = cplx(re, im);
    }
    for (std::size_t i = 0; i < out.size(); ++i)
    {
      auto x = grid.position(i);
      cplx acc = 0.0;
      for (int m = 0; m < 5; ++m)
      {
        acc += a[m] * std::polar(1.0, q[m][0] * x[0] + q[m][1] * x[1] + q[m][2] * x[2]);
      }
      out[i] = acc * std::exp(-r2(x) / (2.0 * width * width));
    }
  }
  else
  {
    const int spikes = 1 + static_cast<int>(rng.uniform() * 12.0);
    for (int m = 0; m < spikes; ++m)
    {
      const auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(grid.cells()));
      const double re = rng.normal();
      const double im = rng.normal();
      out[idx < grid.cells() ? idx : grid.cells() - 1] += cplx(re, im);
    }
  }
  return out;
}

}  // namespace fracscat
