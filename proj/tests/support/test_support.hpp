// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_TEST_SUPPORT_HPP
#define FRACSCAT_TEST_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "fracscat/field.hpp"
#include "fracscat/grid.hpp"

namespace fracscat::test
{

inline Field gaussian(const GridSpec &g, double width = 1.0, double center = 0.0)
{
  return Field::from_function(g,
                              [=](const Point &x)
                              {
                                double r2 = 0.0;
                                for (int a = 0; a < g.dim(); ++a)
                                {
                                  const double d = x[a] - (a == 0 ? center : 0.0);
                                  r2 += d * d;
                                }
                                return cplx(std::exp(-0.5 * r2 / (width * width)));
                              });
}

// exp(1 - 1/(1 - (r/R)^2)) inside |x| < R.
inline Field smooth_bump(const GridSpec &g, double R)
{
  return Field::from_function(g,
                              [=](const Point &x)
                              {
                                double r2 = 0.0;
                                for (int a = 0; a < g.dim(); ++a)
                                  r2 += x[a] * x[a];
                                const double t = r2 / (R * R);
                                return t < 1.0 ? cplx(std::exp(1.0 - 1.0 / (1.0 - t))) : cplx(0.0);
                              });
}

// (1 - (x/R)^2)^k inside |x| < R; C^{k-1}, with modest high derivatives.
inline Field poly_bump(const GridSpec &g, double R, int k)
{
  return Field::from_function(g,
                              [=](const Point &x)
                              {
                                const double t = std::abs(x[0]) / R;
                                return cplx(t < 1.0 ? std::pow(1.0 - t * t, k) : 0.0);
                              });
}

inline Field plane_wave(const GridSpec &g, int k)
{
  const double xi = k * g.freq_step();
  return Field::from_function(g, [=](const Point &x) { return std::exp(cplx(0.0, xi * x[0])); });
}

inline double rel_distance(const Field &a, const Field &b)
{
  return distance(a, b) / l2_norm(b);
}

}  // namespace fracscat::test

#endif
