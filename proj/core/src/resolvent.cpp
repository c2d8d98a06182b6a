// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"
#include "fracscat/multiplier.hpp"

namespace fracscat
{

void check_shell(const GridSpec &grid, double s, double lambda)
{
  if (lambda <= 0.0)
  {
    return;
  }
  const double rho = std::pow(lambda, 1.0 / s);
  if (rho + 2.0 * grid.freq_step() >= grid.nyquist())
  {
    std::ostringstream os;
    os << "shell radius " << rho << " at lambda " << lambda << " is not inside the Nyquist limit "
       << grid.nyquist();
    throw GuardError("nyquist", os.str());
  }
}

double epsilon_floor(const GridSpec &grid, double s, double lambda)
{
  const double rho = std::pow(lambda, 1.0 / s);
  return 0.5 * grid.freq_step() * s * std::pow(rho, s - 1.0);
}

Field free_resolvent(double s, cplx z, const Field &f)
{
  if (!(s > 0.0))
  {
    throw ValidationError("resolvent requires s > 0");
  }
  if (z.imag() == 0.0 && z.real() >= 0.0)
  {
    throw ValidationError("resolvent at real z >= 0 needs eps > 0");
  }
  check_shell(f.grid(), s, z.real());
  return apply_multiplier(ResolventSymbol{s, z}, f);
}

Field free_resolvent_apply(const ResolventQuery &q, const Field &f)
{
  if (!(q.eps >= 0.0))
  {
    throw ValidationError("resolvent requires eps >= 0");
  }
  if (q.sign != 1 && q.sign != -1)
  {
    throw ValidationError("resolvent sign must be +1 or -1");
  }
  if (!q.bessel_weight)
  {
    return free_resolvent(q.s, q.z(), f);
  }
  check_shell(f.grid(), q.s, q.lambda);
  const cplx z = q.z();
  if (z.imag() == 0.0 && z.real() >= 0.0)
  {
    throw ValidationError("resolvent at real z >= 0 needs eps > 0");
  }
  const double s = q.s;
  return apply_multiplier(CustomSymbol{[s, z](const Point &, double r)
                                       {
                                         return std::pow(1.0 + r * r, 0.5 * s) /
                                                (std::pow(r, s) - z);
                                       }},
                          f);
}

std::vector<double> eps_ladder(const GridSpec &grid, double s, double lambda,
                               const LapOptions &opt)
{
  const double floor = epsilon_floor(grid, s, lambda);
  std::vector<double> out;
  for (int k = 0;; ++k)
  {
    const double e = opt.eps_start * std::pow(10.0, -static_cast<double>(k) / opt.points_per_decade);
    if (e < floor * (1.0 - 1e-12))
    {
      break;
    }
    out.push_back(e);
  }
  return out;
}

LapSweep lap_sweep(double s, const std::vector<double> &lambdas,
                   const std::vector<TestFunction> &battery, const DyadicLayout &layout,
                   const LapOptions &opt)
{
  const auto &grid = layout.grid();
  LapSweep sw;
  sw.s = s;
  sw.lambdas = lambdas;
  sw.options = opt;
  for (double lambda : lambdas)
  {
    if (std::abs(lambda) < 0.25)
    {
      throw ValidationError("lap_sweep requires |lambda| >= 0.25");
    }
    check_shell(grid, s, lambda);
    sw.eps_floor.push_back(lambda > 0.0 ? epsilon_floor(grid, s, lambda) : 0.0);
    const auto ladder = eps_ladder(grid, s, std::abs(lambda), opt);
    for (const auto &tf : battery)
    {
      const double bf = b_norm(tf.f, layout);
      const double lf = l2_norm(tf.f);
      const Field fhat = forward_transform(tf.f);
      std::vector<double> rb, rl;
      for (double e : ladder)
      {
        ResolventQuery q{s, lambda, e, +1, false};
        const Field u = free_resolvent_apply(q, fhat);
        q.bessel_weight = true;
        const Field ju = free_resolvent_apply(q, fhat);
        const double rB = bstar_norm(inverse_transform(ju), layout) / bf;
        const double rL = l2_norm(u) / lf;
        rb.push_back(rB);
        rl.push_back(rL);
        sw.rows.push_back({tf.name, lambda, e, rB, rL});
      }
      LapVerdict v;
      v.function = tf.name;
      v.lambda = lambda;
      const int last = static_cast<int>(ladder.size()) - 1;
      const int first = last - 2 * opt.points_per_decade;
      v.usable = first >= 0;
      if (v.usable)
      {
        const auto [lo, hi] = std::minmax_element(rb.begin() + first, rb.end());
        v.rho_B_variation = *hi / *lo;
        v.l2_growth = rl[last] / rl[first];
        v.bounded = v.rho_B_variation <= opt.bounded_factor;
        v.l2_blowup = v.l2_growth >= opt.growth_factor;
      }
      sw.verdicts.push_back(v);
    }
  }
  return sw;
}

StoneResult stone_jump(double s, double lambda, double eps, const Field &f, const Field &g)
{
  if (!(lambda > 0.0) || !(eps > 0.0))
  {
    throw ValidationError("stone_jump requires lambda > 0 and eps > 0");
  }
  require_space(f, Space::physical, "stone_jump");
  require_space(g, Space::physical, "stone_jump");
  require_same_grid(f, g, "stone_jump");
  check_shell(f.grid(), s, lambda);
  StoneResult r;
  r.eps = eps;
  const Field D = free_resolvent(s, cplx(lambda, eps), f) - free_resolvent(s, cplx(lambda, -eps), f);
  const double pi = std::numbers::pi;
  const Field S = apply_multiplier(
    CustomSymbol{[=](const Point &, double k)
                 {
                   const double t = std::pow(k, s) - lambda;
                   return cplx(0.0, 2.0 * pi) * (eps / (pi * (t * t + eps * eps)));
                 }},
    f);
  const double sn = l2_norm(S);
  r.algebraic_residual = sn > 0.0 ? distance(D, S) / sn : l2_norm(D);
  r.pairing = inner(D, g) / cplx(0.0, 2.0 * pi);
  if (f.grid().dim() == 1)
  {
    const double rho = std::pow(lambda, 1.0 / s);
    const double jac = s * std::pow(rho, s - 1.0);
    cplx acc = 0.0;
    for (double sg : {1.0, -1.0})
    {
      const Point xi{sg * rho, 0.0, 0.0};
      acc += dtft(f, xi) * std::conj(dtft(g, xi));
    }
    r.shell_value = acc / (2.0 * pi * jac);
    r.shell_error = std::abs(r.pairing - r.shell_value);
  }
  return r;
}

LinearFit stone_order(const std::vector<StoneResult> &ladder)
{
  std::vector<double> e, err;
  for (const auto &r : ladder)
  {
    e.push_back(r.eps);
    err.push_back(r.shell_error);
  }
  return fit_loglog(e, err);
}

Field trace_free_compact(const GridSpec &grid, double s, double lambda)
{
  auto bump = [](double t) { return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; };
  const Field a = Field::from_function(grid, [&](const Point &x)
                                       { return cplx(bump(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.0)); });
  const Field b = Field::from_function(grid, [&](const Point &x)
                                       { return cplx(bump(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]))); });
  const Point xi{std::pow(lambda, 1.0 / s), 0.0, 0.0};
  const cplx c = dtft(a, xi) / dtft(b, xi);
  return a - cplx(c.real(), 0.0) * b;
}

Field weighted_lap_source(const GridSpec &grid, double s, double lambda)
{
  check_shell(grid, s, lambda);
  const Field phi = trace_free_compact(grid, s, lambda);
  return inverse_transform(apply_multiplier(
    CustomSymbol{[=](const Point &, double k) { return cplx(1.0 / (std::pow(k, s) - lambda)); }},
    forward_transform(phi)));
}

WeightedLapResult weighted_lap_check(double s, double lambda, const std::vector<double> &eps,
                                     const std::vector<double> &delta, const Field &g,
                                     const DyadicLayout &layout)
{
  WeightedLapResult res;
  res.eps = eps;
  res.delta = delta;
  check_shell(g.grid(), s, lambda);
  if (l2_norm(g) == 0.0)
  {
    res.skipped = true;
    return res;
  }
  const Field fhat = apply_multiplier(
    CustomSymbol{[=](const Point &, double k) { return cplx(std::pow(k, s) - lambda); }},
    forward_transform(g));
  const Field f = inverse_transform(fhat);
  std::vector<Field> u;
  for (double e : eps)
  {
    u.push_back(inverse_transform(free_resolvent_apply({s, lambda, e, +1, true}, fhat)));
  }
  const RadialWeight bad = power_weight(s + 1.5);
  const double bb = weighted_b_norm(f, bad, layout);
  for (const auto &ue : u)
  {
    res.violating.push_back(weighted_bstar_norm(ue, bad, layout) / bb);
  }
  if (!res.violating.empty())
  {
    res.violating_growth = res.violating.back() / res.violating.front();
  }
  std::vector<double> last;
  for (double d : delta)
  {
    const RadialWeight mu = mu_weight(s, d);
    const double bm = weighted_b_norm(f, mu, layout);
    std::vector<double> rc;
    for (const auto &ue : u)
    {
      rc.push_back(weighted_bstar_norm(ue, mu, layout) / bm);
    }
    const auto [lo, hi] = std::minmax_element(rc.begin(), rc.end());
    res.compliant_eps_variation = std::max(res.compliant_eps_variation, *hi / *lo);
    last.push_back(rc.back());
    res.compliant.push_back(std::move(rc));
  }
  if (!last.empty())
  {
    const auto [lo, hi] = std::minmax_element(last.begin(), last.end());
    res.compliant_delta_variation = *hi / *lo;
  }
  return res;
}

}  // namespace fracscat
