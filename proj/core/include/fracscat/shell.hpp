// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_SHELL_HPP
#define FRACSCAT_SHELL_HPP

#include <vector>

#include "fracscat/field.hpp"

namespace fracscat
{

// The characteristic shell {|xi|^s = lambda} with a surface quadrature.
// In 1-D the nodes are +-rho with unit (counting) weights.
struct ShellSpec
{
  double s = 0.0;
  double lambda = 0.0;
  double radius = 0.0;
  int dim = 1;
  std::vector<Point> nodes;
  std::vector<double> weights;
};

// Throws GuardError("nyquist") if the shell plus its interpolation stencil
// does not fit below the Nyquist frequency.
ShellSpec make_shell(const GridSpec &grid, double s, double lambda);

struct ShellTrace
{
  std::vector<cplx> values;
  double l2_norm = 0.0;
};

// Interpolated value of a Fourier-space field at an off-lattice frequency:
// 4-point cubic in 1-D, multilinear otherwise.
cplx interpolate_spectrum(const Field &fhat, const Point &xi);

ShellTrace shell_trace(const Field &fhat, const ShellSpec &shell);

}  // namespace fracscat

#endif  // FRACSCAT_SHELL_HPP
