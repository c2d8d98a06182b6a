// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracscat/error.hpp"
#include "fracscat/multiplier.hpp"

namespace fracscat
{

namespace
{

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double norm3(const Point &x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

}  // namespace

bool PotentialSpec::radial_monotone() const
{
  return std::visit(overloaded{
                      [](const PowerTail &p) { return p.gamma >= 0.0; },
                      [](const AnnulusTail &) { return false; },
                      [](const GaussianWell &) { return true; },
                      [](const CompactBump &) { return true; },
                      [](const SampledPotential &) { return false; },
                    },
                    v);
}

bool PotentialSpec::sign_definite() const
{
  return std::visit(overloaded{
                      [](const SampledPotential &s)
                      {
                        bool pos = false, neg = false;
                        for (double x : s.values)
                        {
                          pos |= x > 0.0;
                          neg |= x < 0.0;
                        }
                        return !(pos && neg);
                      },
                      [](const auto &) { return true; },
                    },
                    v);
}

bool PotentialSpec::is_zero() const
{
  return std::visit(overloaded{
                      [](const PowerTail &p) { return p.kappa == 0.0; },
                      [](const AnnulusTail &p) { return p.kappa == 0.0; },
                      [](const GaussianWell &p) { return p.depth == 0.0; },
                      [](const CompactBump &p) { return p.height == 0.0; },
                      [](const SampledPotential &s)
                      { return std::all_of(s.values.begin(), s.values.end(),
                                           [](double x) { return x == 0.0; }); },
                    },
                    v);
}

double PotentialSpec::value_at(const Point &x) const
{
  const double r = norm3(x);
  return std::visit(
    overloaded{
      [&](const PowerTail &p) { return p.kappa * std::pow(1.0 + r, -p.gamma); },
      [&](const AnnulusTail &p)
      {
        const int j = DyadicLayout::annulus_for_radius(r);
        return p.kappa * std::pow(1.0 + r, -1.0 - p.eps(j));
      },
      [&](const GaussianWell &p) { return -p.depth * std::exp(-r * r / (p.width * p.width)); },
      [&](const CompactBump &p)
      {
        const double t = r / p.radius;
        return t < 1.0 ? p.height * std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
      },
      [&](const SampledPotential &s)
      {
        const auto &g = s.grid;
        std::array<int, 3> idx{0, 0, 0};
        for (int a = 0; a < g.dim(); ++a)
        {
          int i = static_cast<int>(std::lround((x[a] + g.half_width()) / g.spacing()));
          idx[a] = ((i % g.points()) + g.points()) % g.points();
        }
        return s.values[g.ravel(idx)];
      },
    },
    v);
}

std::string PotentialSpec::describe() const
{
  std::ostringstream os;
  std::visit(overloaded{
               [&](const PowerTail &p)
               { os << "power_tail(kappa=" << p.kappa << ",gamma=" << p.gamma << ")"; },
               [&](const AnnulusTail &p)
               {
                 os << "annulus_tail(kappa=" << p.kappa << ",eps=" << p.eps.scale << "*j^-"
                    << p.eps.power << ")";
               },
               [&](const GaussianWell &p)
               { os << "gaussian_well(depth=" << p.depth << ",width=" << p.width << ")"; },
               [&](const CompactBump &p)
               { os << "compact_bump(radius=" << p.radius << ",height=" << p.height << ")"; },
               [&](const SampledPotential &s) { os << "sampled(" << s.values.size() << ")"; },
             },
             v);
  return os.str();
}

Field evaluate(const PotentialSpec &V, const GridSpec &grid)
{
  if (auto *s = std::get_if<SampledPotential>(&V.v))
  {
    if (s->grid != grid)
    {
      throw GridMismatchError("sampled potential lives on a different grid");
    }
    return Field::from_real(grid, s->values);
  }
  Field out(grid);
  for (std::size_t c = 0; c < grid.cells(); ++c)
  {
    out[c] = V.value_at(grid.position(c));
  }
  return out;
}

std::vector<double> real_samples(const Field &V)
{
  std::vector<double> out(V.size());
  for (std::size_t c = 0; c < V.size(); ++c)
  {
    out[c] = V[c].real();
  }
  return out;
}

double choose_p(double s, int dim, double delta_p)
{
  if (!(s > 0.0))
  {
    throw ValidationError("choose_p requires s > 0");
  }
  const double half = 0.5 * dim;
  if (s < half)
  {
    return dim / s;
  }
  if (s == half)
  {
    return 2.0 + delta_p;
  }
  return 2.0;
}

namespace
{

struct BallStencil
{
  std::vector<std::array<int, 3>> offsets;
  std::vector<double> weights;
};

// Cells of the closed unit ball around the origin. In 1-D the two end nodes
// at distance exactly 1 carry half weight (trapezoid ends).
BallStencil unit_ball(const GridSpec &g)
{
  BallStencil b;
  const double h = g.spacing();
  const int m = static_cast<int>(std::floor(1.0 / h + 1e-9));
  const int d = g.dim();
  const int lo1 = d > 1 ? -m : 0, hi1 = d > 1 ? m : 0;
  const int lo2 = d > 2 ? -m : 0, hi2 = d > 2 ? m : 0;
  for (int a = -m; a <= m; ++a)
  {
    for (int bb = lo1; bb <= hi1; ++bb)
    {
      for (int c = lo2; c <= hi2; ++c)
      {
        const double r2 = h * h * (a * a + bb * bb + c * c);
        if (r2 > 1.0 + 1e-12)
        {
          continue;
        }
        double w = g.cell_volume();
        if (d == 1 && std::abs(std::sqrt(r2) - 1.0) < 1e-12)
        {
          w *= 0.5;
        }
        b.offsets.push_back({a, bb, c});
        b.weights.push_back(w);
      }
    }
  }
  return b;
}

}  // namespace

AnnulusM annulus_M(const Field &V, const DyadicLayout &layout, int j, double p, int stride,
                   bool radial_shortcut)
{
  const auto &g = layout.grid();
  if (V.grid() != g)
  {
    throw GridMismatchError("annulus_M: potential and layout grids differ");
  }
  if (j < 1 || j > layout.j_max())
  {
    throw ValidationError("annulus_M: annulus index out of range");
  }
  if (!(p >= 1.0))
  {
    throw ValidationError("annulus_M: p must be >= 1");
  }
  const auto ball = unit_ball(g);
  const int n = g.points();
  const double rin = DyadicLayout::radius(j - 1), rout = DyadicLayout::radius(j);
  stride = std::max(1, stride);

  std::vector<std::array<int, 3>> centers;
  if (radial_shortcut)
  {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < g.dim(); ++a)
    {
      idx[a] = n / 2;
    }
    idx[0] = static_cast<int>(std::lround((rin + g.half_width()) / g.spacing()));
    if (idx[0] >= n)
    {
      idx[0] = n - 1;
    }
    centers.push_back(idx);
  }
  else
  {
    for (std::size_t c = 0; c < g.cells(); ++c)
    {
      auto idx = g.unravel(c);
      bool keep = true;
      if (g.dim() > 1)
      {
        for (int a = 0; a < g.dim(); ++a)
        {
          keep &= (idx[a] % stride) == 0;
        }
      }
      else
      {
        keep = (idx[0] % stride) == 0;
      }
      const double r = g.radius(c);
      if (keep && r >= rin - 1e-12 && r <= rout + 1e-12)
      {
        centers.push_back(idx);
      }
    }
  }

  AnnulusM out;
  out.centers = centers.size();
  for (const auto &y : centers)
  {
    double acc = 0.0;
    for (std::size_t k = 0; k < ball.offsets.size(); ++k)
    {
      std::array<int, 3> x{0, 0, 0};
      bool inside = true;
      for (int a = 0; a < g.dim(); ++a)
      {
        x[a] = y[a] + ball.offsets[k][a];
        inside &= x[a] >= 0 && x[a] < n;
      }
      if (!inside)
      {
        out.truncated = true;
        continue;
      }
      acc += ball.weights[k] * std::pow(std::abs(V[g.ravel(x)]), p);
    }
    out.value = std::max(out.value, std::pow(acc, 1.0 / p));
  }
  return out;
}

AnnulusM annulus_M(const PotentialSpec &V, int j, double p, const GridSpec &grid)
{
  DyadicLayout layout(grid);
  const int stride = grid.dim() == 1 ? 1 : 4;
  return annulus_M(evaluate(V, grid), layout, j, p, stride, V.radial_monotone());
}

const char *to_string(RangeVerdict v)
{
  switch (v)
  {
  case RangeVerdict::short_range:
    return "short_range";
  case RangeVerdict::not_short_range:
    return "not_short_range";
  default:
    return "inconclusive";
  }
}

ShortRangeReport classify_series(const std::vector<int> &j, const std::vector<double> &a,
                                 const ShortRangeOptions &opt)
{
  ShortRangeReport rep;
  rep.options = opt;
  rep.j = j;
  rep.RM = a;
  double run = 0.0;
  for (double x : a)
  {
    run += x;
    rep.partial_sums.push_back(run);
  }
  rep.last_term = a.empty() ? 0.0 : a.back();
  const int count = static_cast<int>(j.size());
  if (count < opt.min_points)
  {
    rep.verdict = RangeVerdict::inconclusive;
    return rep;
  }
  const int first = count / 2;
  rep.fit_first_j = j[first];
  std::vector<double> R, y;
  bool all_zero = true;
  for (int i = first; i < count; ++i)
  {
    R.push_back(DyadicLayout::radius(j[i]));
    y.push_back(a[i]);
    all_zero &= a[i] == 0.0;
  }
  if (all_zero)
  {
    // Identically vanishing tail: the series terminates.
    rep.tail_exponent = -std::numeric_limits<double>::infinity();
    rep.fit.r_squared = 1.0;
    rep.verdict = RangeVerdict::short_range;
    return rep;
  }
  rep.fit = fit_loglog(R, y);
  rep.tail_exponent = rep.fit.slope;
  if (rep.fit.points < opt.min_points)
  {
    rep.verdict = RangeVerdict::inconclusive;
  }
  else if (rep.fit.slope < opt.tail_threshold && rep.fit.r_squared >= opt.min_r_squared)
  {
    rep.verdict = RangeVerdict::short_range;
  }
  else if (rep.fit.slope >= opt.long_threshold)
  {
    rep.verdict = RangeVerdict::not_short_range;
  }
  else
  {
    rep.verdict = RangeVerdict::inconclusive;
  }
  return rep;
}

ShortRangeReport shortrange_series(const PotentialSpec &V, const GridSpec &grid, double s,
                                   const ShortRangeOptions &opt)
{
  DyadicLayout layout(grid);
  const double p = choose_p(s, grid.dim(), opt.delta_p);
  const Field Vf = evaluate(V, grid);
  const int stride = grid.dim() == 1 ? opt.stride_1d : opt.stride_nd;
  std::vector<int> js;
  std::vector<double> M, RM;
  bool truncated = false;
  for (int j = 1; j <= layout.j_max() - 1; ++j)
  {
    auto m = annulus_M(Vf, layout, j, p, stride, V.radial_monotone());
    truncated |= m.truncated;
    js.push_back(j);
    M.push_back(m.value);
    RM.push_back(DyadicLayout::radius(j) * m.value);
  }
  auto rep = classify_series(js, RM, opt);
  rep.p = p;
  rep.M = std::move(M);
  rep.truncated = truncated;
  return rep;
}

ShortRangeReport epsilon_series(const EpsilonRule &eps, int j_last, const ShortRangeOptions &opt)
{
  std::vector<int> js;
  std::vector<double> a;
  for (int j = 1; j <= j_last; ++j)
  {
    js.push_back(j);
    a.push_back(std::pow(DyadicLayout::radius(j), -eps(j)));
  }
  return classify_series(js, a, opt);
}

double offdiag_block_norm(const Field &V, const DyadicLayout &layout, int j, int k, double s,
                          int stride)
{
  const auto &g = layout.grid();
  if (V.grid() != g)
  {
    throw GridMismatchError("offdiag_block_norm: potential and layout grids differ");
  }
  if (j < 1 || k < 1 || j > layout.j_max() || k > layout.j_max())
  {
    throw ValidationError("offdiag_block_norm: annulus index out of range");
  }
  if (std::abs(j - k) <= 1)
  {
    throw DomainError("offdiag_block_norm requires |j-k| >= 2");
  }
  if (!(s > 0.0))
  {
    throw ValidationError("offdiag_block_norm requires s > 0");
  }
  stride = std::max(1, stride);
  const auto &rows = layout.cells_in(j);
  const auto &cols = layout.cells_in(k);
  const double w = g.cell_volume();

  std::vector<double> table;
  if (g.dim() == 1)
  {
    // Kernel on lattice distances m*h, m = 1..N-1.
    table.assign(g.points(), 0.0);
    for (int m = 1; m < g.points(); ++m)
    {
      table[m] = bessel_kernel(s, 1, m * g.spacing());
    }
  }

  double best = 0.0;
  for (std::size_t yi = 0; yi < cols.size(); yi += static_cast<std::size_t>(stride))
  {
    const std::size_t y = cols[yi];
    const Point py = g.position(y);
    double acc = 0.0;
    for (auto x : rows)
    {
      const double vx = std::abs(V[x]);
      if (vx == 0.0)
      {
        continue;
      }
      double G;
      if (g.dim() == 1)
      {
        G = table[static_cast<std::size_t>(std::abs(static_cast<long>(x) - static_cast<long>(y)))];
      }
      else
      {
        const Point px = g.position(x);
        const double dx = px[0] - py[0], dy = px[1] - py[1], dz = px[2] - py[2];
        G = bessel_kernel(s, g.dim(), std::sqrt(dx * dx + dy * dy + dz * dz));
      }
      acc += vx * vx * G * G;
    }
    best = std::max(best, std::sqrt(acc * w));
  }
  return best;
}

}  // namespace fracscat
