// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"
#include "fracscat/fredholm.hpp"
#include "fracscat/multiplier.hpp"
#include "fracscat/resolvent.hpp"

namespace fracscat
{

namespace
{

// h sum_{a in S} w_a e^{-i xi x_a}
cplx support_transform(const GridSpec &g, const std::vector<std::size_t> &S,
                       const Eigen::VectorXcd &w, double xi)
{
  cplx acc = 0.0;
  for (std::size_t a = 0; a < S.size(); ++a)
  {
    acc += w[static_cast<Eigen::Index>(a)] * std::polar(1.0, -xi * g.coordinate(static_cast<int>(S[a])));
  }
  return acc * g.spacing();
}

Eigen::VectorXcd gather(const Field &u, const std::vector<std::size_t> &S)
{
  Eigen::VectorXcd v(static_cast<Eigen::Index>(S.size()));
  for (std::size_t a = 0; a < S.size(); ++a)
  {
    v[static_cast<Eigen::Index>(a)] = u[S[a]];
  }
  return v;
}

void require_1d(const GridSpec &g)
{
  if (g.dim() != 1)
  {
    throw ValidationError("the distorted Fourier transform is implemented in one dimension only");
  }
}

}  // namespace

std::vector<DistortedSample> distorted_ft_1d(double s, const std::vector<double> &lambdas,
                                             const Field &V, const Field &f, int sign, double eps)
{
  require_1d(f.grid());
  require_same_grid(V, f, "distorted_ft_1d");
  if (!(eps > 0.0))
  {
    throw ValidationError("distorted_ft_1d needs eps > 0");
  }
  const auto &g = f.grid();
  const double sg = sign >= 0 ? 1.0 : -1.0;
  std::vector<DistortedSample> out;
  for (double lambda : lambdas)
  {
    if (!(lambda > 0.0))
    {
      throw ValidationError("distorted_ft_1d needs lambda > 0");
    }
    check_shell(g, s, lambda);
    DistortedSample d;
    d.lambda = lambda;
    d.rho = std::pow(lambda, 1.0 / s);
    d.plus = dtft(f, Point{d.rho, 0, 0});
    d.minus = dtft(f, Point{-d.rho, 0, 0});
    const cplx z(lambda, sg * eps);
    RestrictedFredholm rf(V, s, z);
    if (!rf.support().empty())
    {
      const Field r0f = free_resolvent(s, z, f);
      const auto w = rf.correction(gather(r0f, rf.support()));
      d.plus += support_transform(g, rf.support(), w, d.rho);
      d.minus += support_transform(g, rf.support(), w, -d.rho);
    }
    out.push_back(d);
  }
  return out;
}

CompletenessReport completeness_1d(double s, const Field &V, const std::vector<TestFunction> &battery,
                                   const std::vector<Field> &eigenvectors,
                                   const CompletenessOptions &opt)
{
  require_space(V, Space::physical, "completeness_1d");
  const auto &g = V.grid();
  require_1d(g);
  const int n = g.points();
  const double dxi = g.freq_step();
  double rho_max = g.nyquist() - 3.0 * dxi;
  if (opt.rho_max > 0.0)
  {
    rho_max = std::min(rho_max, opt.rho_max);
  }
  const int K = static_cast<int>(std::floor(rho_max / dxi));
  if (K < 3)
  {
    throw ValidationError("completeness_1d: too few shells below rho_max");
  }

  std::vector<Field> fhat;
  for (const auto &tf : battery)
  {
    require_same_grid(V, tf.f, "completeness_1d");
    fhat.push_back(forward_transform(tf.f));
  }
  const auto S = potential_support(V);
  const double sg = opt.sign >= 0 ? 1.0 : -1.0;

  // a[f][k] after Richardson, k = 1..K
  std::vector<std::vector<double>> a(battery.size(), std::vector<double>(K + 1, 0.0));
  for (int k = 1; k <= K; ++k)
  {
    const double rho = k * dxi;
    const double lambda = std::pow(rho, s);
    const double floor = epsilon_floor(g, s, lambda);
    double part[2][64] = {};
    if (battery.size() > 64)
    {
      throw ValidationError("completeness_1d: battery too large");
    }
    for (int m = 0; m < 2; ++m)
    {
      const double eps = opt.eps_multiple * floor * (m == 0 ? 1.0 : 2.0);
      const cplx z(lambda, sg * eps);
      std::unique_ptr<RestrictedFredholm> rf;
      std::vector<cplx> table;
      if (!S.empty())
      {
        rf = std::make_unique<RestrictedFredholm>(V, s, z);
        table.resize(g.cells());
        for (std::size_t c = 0; c < g.cells(); ++c)
        {
          table[c] = 1.0 / (std::pow(g.frequency_norm(c), s) - z);
        }
      }
      for (std::size_t fi = 0; fi < battery.size(); ++fi)
      {
        cplx fp = fhat[fi][static_cast<std::size_t>(k)];
        cplx fm = fhat[fi][static_cast<std::size_t>(n - k)];
        if (rf)
        {
          const Field r0f = inverse_transform(apply_table(table, fhat[fi]));
          const auto w = rf->correction(gather(r0f, S));
          fp += support_transform(g, S, w, rho);
          fm += support_transform(g, S, w, -rho);
        }
        part[m][fi] = std::norm(fp) + std::norm(fm);
      }
    }
    for (std::size_t fi = 0; fi < battery.size(); ++fi)
    {
      a[fi][k] = 2.0 * part[0][fi] - part[1][fi];
    }
  }

  CompletenessReport rep;
  rep.shells = static_cast<std::size_t>(K);
  rep.rho_max = K * dxi;
  const double pi = std::numbers::pi;
  for (std::size_t fi = 0; fi < battery.size(); ++fi)
  {
    CompletenessRow row;
    row.function = battery[fi].name;
    row.norm_sq = l2_norm_sq(battery[fi].f);
    for (const auto &u : eigenvectors)
    {
      row.projection += std::norm(inner(battery[fi].f, u));
    }
    row.continuous = row.norm_sq - row.projection;
    double sum = 0.0;
    for (int k = 1; k <= K; ++k)
    {
      sum += a[fi][k];
    }
    const double a0 = 3.0 * a[fi][1] - 3.0 * a[fi][2] + a[fi][3];
    row.functional = dxi * (sum + 0.5 * a0) / (2.0 * pi);
    row.relative_error = std::abs(row.functional - row.continuous) / row.norm_sq;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace fracscat
