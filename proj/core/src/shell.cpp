// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/shell.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fracscat/error.hpp"
#include "fracscat/fit.hpp"

namespace fracscat
{

ShellSpec make_shell(const GridSpec &grid, double s, double lambda)
{
  if (!(s > 0.0) || !(lambda > 0.0))
  {
    throw ValidationError("shell requires s > 0 and lambda > 0");
  }
  ShellSpec sh;
  sh.s = s;
  sh.lambda = lambda;
  sh.radius = std::pow(lambda, 1.0 / s);
  sh.dim = grid.dim();
  const double dxi = grid.freq_step();
  if (sh.radius + 2.0 * dxi >= grid.nyquist())
  {
    std::ostringstream os;
    os << "shell radius " << sh.radius << " is not inside the Nyquist limit " << grid.nyquist();
    throw GuardError("nyquist", os.str());
  }
  const double rho = sh.radius;
  const double pi = std::numbers::pi;
  if (sh.dim == 1)
  {
    sh.nodes = {Point{rho, 0, 0}, Point{-rho, 0, 0}};
    sh.weights = {1.0, 1.0};
  }
  else if (sh.dim == 2)
  {
    const int nang = 4 * static_cast<int>(std::ceil(rho / dxi));
    for (int k = 0; k < nang; ++k)
    {
      const double th = 2.0 * pi * k / nang;
      sh.nodes.push_back(Point{rho * std::cos(th), rho * std::sin(th), 0});
      sh.weights.push_back(2.0 * pi * rho / nang);
    }
  }
  else
  {
    const int nphi = 4 * static_cast<int>(std::ceil(rho / dxi));
    const int nth = std::max(2, nphi / 2);
    std::vector<double> ct, wt;
    gauss_legendre(nth, -1.0, 1.0, ct, wt);
    for (int a = 0; a < nth; ++a)
    {
      const double st = std::sqrt(1.0 - ct[a] * ct[a]);
      for (int k = 0; k < nphi; ++k)
      {
        const double ph = 2.0 * pi * k / nphi;
        sh.nodes.push_back(Point{rho * st * std::cos(ph), rho * st * std::sin(ph), rho * ct[a]});
        sh.weights.push_back(rho * rho * wt[a] * 2.0 * pi / nphi);
      }
    }
  }
  return sh;
}

namespace
{

inline int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

cplx interpolate_spectrum(const Field &fhat, const Point &xi)
{
  require_space(fhat, Space::fourier, "interpolate_spectrum");
  const auto &g = fhat.grid();
  const int n = g.points();
  const double dxi = g.freq_step();
  if (g.dim() == 1)
  {
    const double k = xi[0] / dxi;
    const int k0 = static_cast<int>(std::floor(k));
    const double t = k - k0;
    // Lagrange weights on nodes -1, 0, 1, 2.
    const double w[4] = {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
                         -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
    cplx acc = 0.0;
    for (int m = 0; m < 4; ++m)
    {
      acc += w[m] * fhat[static_cast<std::size_t>(wrap(k0 - 1 + m, n))];
    }
    return acc;
  }
  const int d = g.dim();
  int base[3] = {0, 0, 0};
  double frac[3] = {0, 0, 0};
  for (int a = 0; a < d; ++a)
  {
    const double k = xi[a] / dxi;
    base[a] = static_cast<int>(std::floor(k));
    frac[a] = k - base[a];
  }
  cplx acc = 0.0;
  for (int corner = 0; corner < (1 << d); ++corner)
  {
    double w = 1.0;
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < d; ++a)
    {
      const int bit = (corner >> a) & 1;
      w *= bit ? frac[a] : 1.0 - frac[a];
      idx[a] = wrap(base[a] + bit, n);
    }
    acc += w * fhat[g.ravel(idx)];
  }
  return acc;
}

ShellTrace shell_trace(const Field &fhat, const ShellSpec &shell)
{
  require_space(fhat, Space::fourier, "shell_trace");
  if (shell.dim != fhat.grid().dim())
  {
    throw GridMismatchError("shell dimension differs from field grid");
  }
  ShellTrace tr;
  double acc = 0.0;
  for (std::size_t k = 0; k < shell.nodes.size(); ++k)
  {
    const cplx v = interpolate_spectrum(fhat, shell.nodes[k]);
    tr.values.push_back(v);
    acc += shell.weights[k] * std::norm(v);
  }
  tr.l2_norm = std::sqrt(acc);
  return tr;
}

}  // namespace fracscat
