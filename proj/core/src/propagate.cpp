// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>

#include "fracscat/dynamics.hpp"
#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"
#include "fracscat/multiplier.hpp"

namespace fracscat
{

Field free_evolve(const Field &u, double t, double s)
{
  if (t == 0.0)
  {
    return u;
  }
  return apply_multiplier(FreePhase{s, t}, u);
}

SplitStep::SplitStep(const Field &V, double s, double dt) : grid_(V.grid()), s_(s), dt_(dt)
{
  require_space(V, Space::physical, "SplitStep");
  if (!(dt > 0.0))
  {
    throw ValidationError("split-step requires dt > 0");
  }
  if (!(s > 0.0))
  {
    throw ValidationError("split-step requires s > 0");
  }
  const double vmax = max_abs(V);
  if (!(vmax * dt < 0.5))
  {
    std::ostringstream os;
    os << "stability guard violated: ||V||_inf * dt = " << vmax * dt << " >= 0.5";
    throw GuardError("step_size", os.str());
  }
  const std::size_t n = grid_.cells();
  half_v_fwd_.resize(n);
  half_v_bwd_.resize(n);
  kin_fwd_.resize(n);
  kin_bwd_.resize(n);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t c = 0; c < n; ++c)
  {
    const double v = V[c].real();
    half_v_fwd_[c] = std::polar(1.0, -0.5 * dt * v);
    half_v_bwd_[c] = std::conj(half_v_fwd_[c]);
    const double w = std::pow(grid_.frequency_norm(c), s);
    kin_fwd_[c] = std::polar(inv, -dt * w);
    kin_bwd_[c] = std::conj(kin_fwd_[c]);
  }
}

Field SplitStep::evolve(const Field &u, double t) const
{
  require_space(u, Space::physical, "full_evolve");
  if (u.grid() != grid_)
  {
    throw GridMismatchError("full_evolve: field and potential grids differ");
  }
  const double steps = std::abs(t) / dt_;
  const long n = std::lround(steps);
  if (std::abs(steps - static_cast<double>(n)) > 1e-9 * std::max(1.0, steps))
  {
    std::ostringstream os;
    os << "dt = " << dt_ << " does not divide t = " << t;
    throw GuardError("step_size", os.str());
  }
  const auto &hv = t >= 0.0 ? half_v_fwd_ : half_v_bwd_;
  const auto &kin = t >= 0.0 ? kin_fwd_ : kin_bwd_;
  Field out(u);
  cplx *data = out.data();
  const std::size_t m = out.size();
  for (long k = 0; k < n; ++k)
  {
    for (std::size_t c = 0; c < m; ++c)
    {
      data[c] *= hv[c];
    }
    detail::fft_inplace(grid_.dim(), grid_.points(), data, -1);
    for (std::size_t c = 0; c < m; ++c)
    {
      data[c] *= kin[c];
    }
    detail::fft_inplace(grid_.dim(), grid_.points(), data, +1);
    for (std::size_t c = 0; c < m; ++c)
    {
      data[c] *= hv[c];
    }
  }
  return out;
}

Field full_evolve(const Field &u, double t, const Field &V, double dt, double s)
{
  require_same_grid(u, V, "full_evolve");
  return SplitStep(V, s, dt).evolve(u, t);
}

}  // namespace fracscat
