// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/error.hpp"
#include "fracscat/dyadic.hpp"

#include <cmath>

#include "fracscat/multiplier.hpp"

namespace fracscat
{

int DyadicLayout::annulus_for_radius(double r)
{
  int j = 1;
  while (r > radius(j))
  {
    ++j;
  }
  return j;
}

DyadicLayout::DyadicLayout(const GridSpec &grid) : grid_(grid), label_(grid.cells())
{
  const double rmax = grid.half_width() * std::sqrt(static_cast<double>(grid.dim()));
  j_max_ = 1;
  while (radius(j_max_) < rmax)
  {
    ++j_max_;
  }
  members_.resize(j_max_);
  for (std::size_t c = 0; c < grid.cells(); ++c)
  {
    int j = std::min(annulus_for_radius(grid.radius(c)), j_max_);
    label_[c] = j;
    members_[j - 1].push_back(c);
  }
}

RadialWeight mu_weight(double s, double eps)
{
  const double a = s + 0.5;
  return [a, eps](double t) { return std::pow(1.0 + t, a) * std::pow(1.0 + eps * t, -a); };
}

RadialWeight power_weight(double r)
{
  return [r](double t) { return std::pow(1.0 + t, r); };
}

std::vector<double> annulus_norms(const Field &u, const DyadicLayout &layout)
{
  require_space(u, Space::physical, "annulus_norms");
  if (u.grid() != layout.grid())
  {
    throw GridMismatchError("annulus_norms: field and layout grids differ");
  }
  const double w = u.grid().cell_volume();
  std::vector<double> out(layout.j_max(), 0.0);
  for (int j = 1; j <= layout.j_max(); ++j)
  {
    double acc = 0.0;
    for (auto c : layout.cells_in(j))
    {
      acc += std::norm(u[c]);
    }
    out[j - 1] = std::sqrt(acc * w);
  }
  return out;
}

NormReport b_norm_report(const Field &u, const DyadicLayout &layout)
{
  NormReport r;
  r.annulus = annulus_norms(u, layout);
  double best = -1.0;
  for (int j = 1; j <= layout.j_max(); ++j)
  {
    const double t = std::sqrt(DyadicLayout::radius(j)) * r.annulus[j - 1];
    r.value += t;
    if (t > best)
    {
      best = t;
      r.argmax = j;
    }
    r.last_term = t;
  }
  return r;
}

NormReport bstar_norm_report(const Field &u, const DyadicLayout &layout)
{
  NormReport r;
  r.annulus = annulus_norms(u, layout);
  for (int j = 1; j <= layout.j_max(); ++j)
  {
    const double t = r.annulus[j - 1] / std::sqrt(DyadicLayout::radius(j));
    if (t > r.value)
    {
      r.value = t;
      r.argmax = j;
    }
    r.last_term = t;
  }
  return r;
}

double b_norm(const Field &u, const DyadicLayout &layout) { return b_norm_report(u, layout).value; }

double bstar_norm(const Field &u, const DyadicLayout &layout)
{
  return bstar_norm_report(u, layout).value;
}

double bsstar_norm(const Field &u, double s, const DyadicLayout &layout)
{
  return bstar_norm(bessel_potential(s, u), layout);
}

Field apply_radial_weight(const Field &u, const RadialWeight &mu)
{
  require_space(u, Space::physical, "apply_radial_weight");
  Field out(u);
  const auto &g = u.grid();
  for (std::size_t c = 0; c < out.size(); ++c)
  {
    out[c] *= mu(g.radius(c));
  }
  return out;
}

double weighted_bstar_norm(const Field &u, const RadialWeight &mu, const DyadicLayout &layout)
{
  return bstar_norm(apply_radial_weight(u, mu), layout);
}

double weighted_b_norm(const Field &u, const RadialWeight &mu, const DyadicLayout &layout)
{
  return b_norm(apply_radial_weight(u, mu), layout);
}

}  // namespace fracscat
