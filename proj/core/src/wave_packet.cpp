// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fracscat/dynamics.hpp"
#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"

namespace fracscat
{

double group_speed(double s, double r) { return s * std::pow(r, s - 1.0); }

WavePacket make_wave_packet(const GridSpec &grid, double s, double r_min, double r_max,
                            const PacketOptions &opt)
{
  if (!(s > 0.0))
  {
    throw ValidationError("wave packet requires s > 0");
  }
  if (!(r_min > 0.0) || !(r_max > r_min))
  {
    throw ValidationError("wave packet requires 0 < r_min < r_max");
  }
  if (r_max + grid.freq_step() >= grid.nyquist())
  {
    throw GuardError("nyquist", "packet annulus exceeds the Nyquist frequency");
  }
  const double c = 0.5 * (r_min + r_max);
  const double sigma = 0.1 * (r_max - r_min);
  const int d = grid.dim();

  Point dir = opt.direction;
  const double dn = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
  const bool radial = dn == 0.0;
  if (!radial)
  {
    for (auto &x : dir)
    {
      x /= dn;
    }
  }

  Field uhat(grid, Space::fourier);
  double inside = 0.0, outside = 0.0;
  for (std::size_t cell = 0; cell < grid.cells(); ++cell)
  {
    const Point xi = grid.frequency_vector(cell);
    const double r = grid.frequency_norm(cell);
    double amp;
    if (d == 1)
    {
      const bool keep = radial || (dir[0] > 0 ? xi[0] > 0.0 : xi[0] < 0.0);
      amp = keep ? std::exp(-(r - c) * (r - c) / (2.0 * sigma * sigma)) : 0.0;
    }
    else if (radial)
    {
      amp = std::exp(-(r - c) * (r - c) / (2.0 * sigma * sigma));
    }
    else
    {
      double q = 0.0;
      for (int a = 0; a < d; ++a)
      {
        q += (xi[a] - c * dir[a]) * (xi[a] - c * dir[a]);
      }
      amp = std::exp(-q / (2.0 * sigma * sigma));
    }
    double phase = 0.0;
    for (int a = 0; a < d; ++a)
    {
      phase -= xi[a] * opt.center[a];
    }
    uhat[cell] = std::polar(amp, phase);
    const double m = amp * amp;
    (r >= r_min && r <= r_max ? inside : outside) += m;
  }
  WavePacket p{inverse_transform(uhat)};
  p.s = s;
  p.r_min = r_min;
  p.r_max = r_max;
  p.leakage = outside / (inside + outside);
  if (p.leakage >= opt.support_tolerance)
  {
    std::ostringstream os;
    os << "packet Fourier mass outside the annulus is " << p.leakage;
    throw ValidationError(os.str());
  }
  p.u *= 1.0 / l2_norm(p.u);

  const double va = group_speed(s, r_min), vb = group_speed(s, r_max);
  p.v_min = std::min(va, vb);
  p.v_max = std::max(va, vb);

  // Smallest radius R with mass(|x| > R) <= width_mass.
  std::vector<std::size_t> order(grid.cells());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto radii = grid.radii();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return radii[a] > radii[b]; });
  double total = 0.0;
  for (auto z : p.u.values())
  {
    total += std::norm(z);
  }
  double tail = 0.0;
  p.width = 0.0;
  for (auto cell : order)
  {
    tail += std::norm(p.u[cell]);
    if (tail > opt.width_mass * total)
    {
      p.width = radii[cell];
      break;
    }
  }
  return p;
}

double time_horizon(const WavePacket &p)
{
  return 0.8 * (p.u.grid().half_width() - p.width) / p.v_max;
}

void check_horizon(const WavePacket &p, double t)
{
  const double cap = time_horizon(p);
  if (std::abs(t) > cap)
  {
    std::ostringstream os;
    os << "time " << t << " exceeds the torus horizon " << cap << " (packet width " << p.width
       << ", v_max " << p.v_max << ")";
    throw GuardError("torus_wrap", os.str());
  }
}

}  // namespace fracscat
