// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/fit.hpp"

#include <cmath>
#include <numbers>

#include "fracscat/error.hpp"

namespace fracscat
{

LinearFit fit_line(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size())
  {
    throw ValidationError("fit_line: size mismatch");
  }
  LinearFit f;
  const std::size_t n = x.size();
  f.points = static_cast<int>(n);
  if (n < 2)
  {
    return f;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0)
  {
    return f;
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  // Perfectly flat data is a perfect fit.
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

LinearFit fit_loglog(std::span<const double> x, std::span<const double> y, double floor)
{
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
  {
    if (y[i] > floor && x[i] > 0.0)
    {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  return fit_line(lx, ly);
}

void gauss_legendre(int n, double a, double b, std::vector<double> &nodes,
                    std::vector<double> &weights)
{
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
  {
    // Newton iteration from the Chebyshev-like initial guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it)
    {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k)
      {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1)
      {
        p1 = z;
        p0 = 1.0;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15)
      {
        break;
      }
    }
    nodes[i] = 0.5 * (a + b) - 0.5 * (b - a) * z;
    weights[i] = (b - a) / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace fracscat
