// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracscat/dynamics.hpp"
#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"

namespace fracscat
{

CookProfile cook_profile(const WavePacket &p, const Field &V, double t_max,
                         const CookOptions &opt)
{
  require_same_grid(p.u, V, "cook_profile");
  check_horizon(p, t_max);
  CookProfile prof;
  for (int i = 0;; ++i)
  {
    const double t = opt.t_min * std::exp2(static_cast<double>(i) / opt.points_per_octave);
    if (t > t_max * (1.0 + 1e-12))
    {
      break;
    }
    prof.t.push_back(t);
    prof.g.push_back(l2_norm(V.times(free_evolve(p.u, t, p.s))));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < prof.t.size(); ++i)
  {
    if (i > 0)
    {
      acc += 0.5 * (prof.g[i] + prof.g[i - 1]) * (prof.t[i] - prof.t[i - 1]);
    }
    prof.cumulative.push_back(acc);
  }
  if (std::all_of(prof.g.begin(), prof.g.end(), [](double g) { return g == 0.0; }))
  {
    prof.tail_exponent = -std::numeric_limits<double>::infinity();
    prof.verdict = "integrable";
    return prof;
  }
  prof.fit_from = opt.clearance * p.width / p.v_min;
  std::vector<double> tt, gg;
  for (std::size_t i = 0; i < prof.t.size(); ++i)
  {
    if (prof.t[i] >= prof.fit_from)
    {
      tt.push_back(prof.t[i]);
      gg.push_back(prof.g[i]);
    }
  }
  if (tt.size() < 3)
  {
    throw ValidationError("cook_profile: t_max leaves fewer than 3 points after the packet clears the core");
  }
  prof.fit = fit_loglog(tt, gg);
  prof.tail_exponent = prof.fit.slope;
  if (prof.tail_exponent < opt.integrable_below)
  {
    prof.verdict = "integrable";
  }
  else if (prof.tail_exponent > opt.nonintegrable_above)
  {
    prof.verdict = "non_integrable";
  }
  else
  {
    prof.verdict = "undetermined";
  }
  return prof;
}

Field wave_operator_apply(const Field &u, double T, const SplitStep &H, double s)
{
  return H.evolve(free_evolve(u, T, s), -T);
}

ScatteringRecord wave_operator_estimate(const WavePacket &p, const Field &V,
                                        const std::vector<double> &T_ladder, double dt,
                                        const WaveOpOptions &opt)
{
  require_same_grid(p.u, V, "wave_operator_estimate");
  if (T_ladder.empty())
  {
    throw ValidationError("wave_operator_estimate: empty T ladder");
  }
  if (!std::is_sorted(T_ladder.begin(), T_ladder.end()))
  {
    throw ValidationError("wave_operator_estimate: T ladder must be increasing");
  }
  check_horizon(p, T_ladder.back() + opt.tau);
  const SplitStep H(V, p.s, dt);
  ScatteringRecord rec;
  rec.options = opt;
  rec.T = T_ladder;
  for (double T : T_ladder)
  {
    rec.snapshots.push_back(wave_operator_apply(p.u, T, H, p.s));
    const double iso = std::abs(l2_norm(rec.snapshots.back()) - 1.0);
    rec.isometry.push_back(iso);
    rec.isometry_residual = std::max(rec.isometry_residual, iso);
  }
  for (std::size_t k = 1; k < rec.snapshots.size(); ++k)
  {
    rec.drift.push_back(distance(rec.snapshots[k], rec.snapshots[k - 1]));
  }
  const double T = T_ladder.back();
  const Field lhs = H.evolve(rec.snapshots.back(), -opt.tau);
  const Field rhs = wave_operator_apply(free_evolve(p.u, -opt.tau, p.s), T, H, p.s);
  rec.intertwining_residual = distance(lhs, rhs);

  rec.decreasing = true;
  for (std::size_t k = 1; k < rec.drift.size(); ++k)
  {
    const bool floor = rec.drift[k] <= opt.noise_floor;
    if (!(rec.drift[k] < rec.drift[k - 1] || floor))
    {
      rec.decreasing = false;
    }
  }
  const double last = rec.drift.empty() ? 0.0 : rec.drift.back();
  const double prev = rec.drift.size() >= 2 ? rec.drift[rec.drift.size() - 2] : last;
  if (rec.decreasing && last < opt.tol)
  {
    rec.verdict = "converged";
  }
  else if (last >= opt.tol && last >= opt.ratio * prev)
  {
    rec.verdict = "diverging";
  }
  else
  {
    rec.verdict = "undetermined";
  }
  return rec;
}

Field born_approximation(const Field &u, const Field &V, double s, double T, int steps)
{
  require_same_grid(u, V, "born_approximation");
  require_space(u, Space::physical, "born_approximation");
  if (steps < 2 || steps % 2 != 0)
  {
    throw ValidationError("born_approximation: steps must be even and >= 2");
  }
  const auto &g = u.grid();
  const std::size_t n = g.cells();
  const double inv = 1.0 / static_cast<double>(n);
  const double h = T / steps;

  // Everything below lives in raw FFT coordinates; phases and weights that
  // the continuous transform would add cancel between the two directions.
  std::vector<cplx> uh(u.values().begin(), u.values().end());
  detail::fft_inplace(g.dim(), g.points(), uh.data(), -1);
  std::vector<cplx> step(n), phase(n, cplx(1.0, 0.0)), acc(n), work(n);
  for (std::size_t c = 0; c < n; ++c)
  {
    step[c] = std::polar(1.0, -h * std::pow(g.frequency_norm(c), s));
  }
  for (int k = 0; k <= steps; ++k)
  {
    if (k > 0)
    {
      // Recompute exactly every 64 steps to keep the running product honest.
      if (k % 64 == 0)
      {
        for (std::size_t c = 0; c < n; ++c)
        {
          phase[c] = std::polar(1.0, -k * h * std::pow(g.frequency_norm(c), s));
        }
      }
      else
      {
        for (std::size_t c = 0; c < n; ++c)
        {
          phase[c] *= step[c];
        }
      }
    }
    const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    for (std::size_t c = 0; c < n; ++c)
    {
      work[c] = phase[c] * uh[c] * inv;
    }
    detail::fft_inplace(g.dim(), g.points(), work.data(), +1);
    for (std::size_t c = 0; c < n; ++c)
    {
      work[c] *= V[c].real();
    }
    detail::fft_inplace(g.dim(), g.points(), work.data(), -1);
    for (std::size_t c = 0; c < n; ++c)
    {
      acc[c] += w * std::conj(phase[c]) * work[c];
    }
  }
  detail::fft_inplace(g.dim(), g.points(), acc.data(), +1);
  Field out(u);
  const cplx scale(0.0, h / 3.0 * inv);
  for (std::size_t c = 0; c < n; ++c)
  {
    out[c] += scale * acc[c];
  }
  return out;
}

NonexistenceReport nonexistence_drift(const WavePacket &p, const Field &V, const EpsilonRule &eps,
                                      int j_first, int j_last, int quad_points)
{
  require_same_grid(p.u, V, "nonexistence_drift");
  if (j_first < 2 || j_last < j_first)
  {
    throw ValidationError("nonexistence_drift: need 2 <= j_first <= j_last");
  }
  if (!(p.v_min > 5.0 / 6.0 && p.v_max < 6.0 / 7.0))
  {
    std::ostringstream os;
    os << "packet speed band [" << p.v_min << ", " << p.v_max << "] is not inside (5/6, 6/7)";
    throw ValidationError(os.str());
  }
  bool pos = false, neg = false;
  for (auto z : V.values())
  {
    pos |= z.real() > 0.0;
    neg |= z.real() < 0.0;
  }
  if (pos && neg)
  {
    throw ValidationError("nonexistence_drift requires a sign-definite potential");
  }
  check_horizon(p, 0.8 * DyadicLayout::radius(j_last));

  NonexistenceReport rep;
  const double w = p.u.grid().cell_volume();
  double cum = 0.0;
  std::vector<double> nodes, weights;
  for (int j = j_first; j <= j_last; ++j)
  {
    const double a = 1.25 * DyadicLayout::radius(j - 1);
    const double b = 0.8 * DyadicLayout::radius(j);
    gauss_legendre(quad_points, a, b, nodes, weights);
    double D = 0.0;
    for (int q = 0; q < quad_points; ++q)
    {
      const Field ut = free_evolve(p.u, nodes[q], p.s);
      double pair = 0.0;
      for (std::size_t c = 0; c < ut.size(); ++c)
      {
        pair += V[c].real() * std::norm(ut[c]);
      }
      D += weights[q] * std::abs(pair * w);
    }
    const double P = std::pow(DyadicLayout::radius(j), -eps(j));
    cum += D;
    rep.blocks.push_back(j);
    rep.D.push_back(D);
    rep.P.push_back(P);
    rep.ratio.push_back(P > 0.0 ? D / P : 0.0);
    rep.cumulative.push_back(cum);
  }
  const auto [lo, hi] = std::minmax_element(rep.ratio.begin(), rep.ratio.end());
  rep.spread = *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
  rep.min_D = *std::min_element(rep.D.begin(), rep.D.end());
  return rep;
}

LocalizationReport localization_check(const WavePacket &p, const std::vector<double> &times)
{
  LocalizationReport rep;
  const auto radii = p.u.grid().radii();
  for (double t : times)
  {
    check_horizon(p, t);
    const Field ut = free_evolve(p.u, t, p.s);
    const double lo = 0.5 * p.v_min * std::abs(t), hi = 2.0 * p.v_max * std::abs(t);
    double total = 0.0, out = 0.0;
    for (std::size_t c = 0; c < ut.size(); ++c)
    {
      const double m = std::norm(ut[c]);
      total += m;
      if (!(radii[c] > lo && radii[c] < hi))
      {
        out += m;
      }
    }
    rep.t.push_back(t);
    rep.outside.push_back(total > 0.0 ? out / total : 0.0);
  }
  std::vector<double> tt, oo;
  for (std::size_t i = 0; i < rep.t.size(); ++i)
  {
    if (rep.t[i] > 0.0)
    {
      tt.push_back(rep.t[i]);
      oo.push_back(rep.outside[i]);
    }
  }
  rep.fit = fit_loglog(tt, oo, 1e-26);
  return rep;
}

}  // namespace fracscat
