// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_FIT_HPP
#define FRACSCAT_FIT_HPP

#include <span>
#include <vector>

namespace fracscat
{

struct LinearFit
{
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

// Ordinary least squares y = slope*x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Fit of log y against log x, skipping entries with y <= floor.
LinearFit fit_loglog(std::span<const double> x, std::span<const double> y, double floor = 0.0);

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double> &nodes,
                    std::vector<double> &weights);

}  // namespace fracscat

#endif  // FRACSCAT_FIT_HPP
