// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/fredholm.hpp"

#include <cmath>
#include <sstream>

#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"
#include "fracscat/multiplier.hpp"

namespace fracscat
{

std::vector<std::size_t> potential_support(const Field &V, double cut)
{
  const double vmax = max_abs(V);
  std::vector<std::size_t> S;
  if (vmax == 0.0)
  {
    return S;
  }
  for (std::size_t c = 0; c < V.size(); ++c)
  {
    if (std::abs(V[c]) > cut * vmax)
    {
      S.push_back(c);
    }
  }
  return S;
}

std::vector<cplx> resolvent_kernel(const GridSpec &grid, double s, cplx z)
{
  std::vector<cplx> k(grid.cells());
  for (std::size_t c = 0; c < grid.cells(); ++c)
  {
    k[c] = 1.0 / (std::pow(grid.frequency_norm(c), s) - z);
  }
  detail::fft_inplace(grid.dim(), grid.points(), k.data(), +1);
  const double inv = 1.0 / static_cast<double>(grid.cells());
  for (auto &x : k)
  {
    x *= inv;
  }
  return k;
}

namespace
{

std::size_t index_difference(const GridSpec &g, std::size_t a, std::size_t b)
{
  const auto ia = g.unravel(a), ib = g.unravel(b);
  std::array<int, 3> d{0, 0, 0};
  const int n = g.points();
  for (int q = 0; q < g.dim(); ++q)
  {
    d[q] = ((ia[q] - ib[q]) % n + n) % n;
  }
  return g.ravel(d);
}

std::vector<cplx> symbol_values(const GridSpec &g, double s, cplx z)
{
  std::vector<cplx> t(g.cells());
  for (std::size_t c = 0; c < g.cells(); ++c)
  {
    t[c] = 1.0 / (std::pow(g.frequency_norm(c), s) - z);
  }
  return t;
}

}  // namespace

RestrictedFredholm::RestrictedFredholm(const Field &V, double s, cplx z, double cut)
  : grid_(V.grid()), s_(s), z_(z), S_(potential_support(V, cut))
{
  require_space(V, Space::physical, "RestrictedFredholm");
  const auto n = static_cast<Eigen::Index>(S_.size());
  v_.resize(n);
  for (Eigen::Index a = 0; a < n; ++a)
  {
    v_[a] = V[S_[a]].real();
  }
  A_ = Eigen::MatrixXcd::Identity(n, n);
  if (n == 0)
  {
    return;
  }
  const auto k = resolvent_kernel(grid_, s, z);
  for (Eigen::Index a = 0; a < n; ++a)
  {
    for (Eigen::Index b = 0; b < n; ++b)
    {
      A_(a, b) += v_[a] * k[index_difference(grid_, S_[a], S_[b])];
    }
  }
  lu_ = std::make_unique<Eigen::PartialPivLU<Eigen::MatrixXcd>>(A_);
}

Eigen::VectorXcd RestrictedFredholm::correction(const Eigen::VectorXcd &r0g) const
{
  if (S_.empty())
  {
    return Eigen::VectorXcd();
  }
  Eigen::VectorXcd rhs = -(v_.cast<cplx>().array() * r0g.array()).matrix();
  return lu_->solve(rhs);
}

Field RestrictedFredholm::solve(const Field &g) const
{
  require_space(g, Space::physical, "RestrictedFredholm::solve");
  if (g.grid() != grid_)
  {
    throw GridMismatchError("RestrictedFredholm: grid mismatch");
  }
  Field f(g);
  if (S_.empty())
  {
    return f;
  }
  const Field r0g = apply_table(symbol_values(grid_, s_, z_), g);
  Eigen::VectorXcd r(static_cast<Eigen::Index>(S_.size()));
  for (std::size_t a = 0; a < S_.size(); ++a)
  {
    r[static_cast<Eigen::Index>(a)] = r0g[S_[a]];
  }
  const Eigen::VectorXcd w = correction(r);
  for (std::size_t a = 0; a < S_.size(); ++a)
  {
    f[S_[a]] += w[static_cast<Eigen::Index>(a)];
  }
  return f;
}

double RestrictedFredholm::smallest_singular_value() const
{
  if (S_.empty())
  {
    return 1.0;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A_);
  return svd.singularValues().minCoeff();
}

FredholmResult fredholm_solve(double s, cplx z, const Field &V, const Field &g,
                              const FredholmOptions &opt)
{
  require_space(g, Space::physical, "fredholm_solve");
  require_space(V, Space::physical, "fredholm_solve");
  require_same_grid(V, g, "fredholm_solve");
  if (z.imag() == 0.0 && z.real() >= 0.0)
  {
    throw ValidationError("fredholm_solve needs eps > 0 for lambda >= 0");
  }
  const auto &grid = g.grid();
  const auto S = potential_support(V, opt.support_cut);
  FredholmResult res{g};
  if (S.empty())
  {
    res.method = "trivial";
    return res;
  }
  const auto table = symbol_values(grid, s, z);
  const LinearMap A = [&](std::span<const cplx> x, std::span<cplx> y)
  {
    Field xf(grid, Space::physical, std::vector<cplx>(x.begin(), x.end()));
    const Field r = apply_table(table, xf);
    for (std::size_t c = 0; c < y.size(); ++c)
    {
      y[c] = x[c] + V[c].real() * r[c];
    }
  };

  bool done = false;
  if (opt.method != FredholmMethod::restricted_dense)
  {
    Field x(g);
    const auto kr = gmres(A, g.values(), x.values(), opt.krylov);
    res.iterations = kr.iterations;
    if (kr.converged)
    {
      res.f = std::move(x);
      res.method = "gmres";
      done = true;
    }
    else if (opt.method == FredholmMethod::gmres || S.size() > opt.dense_limit)
    {
      std::ostringstream os;
      os << "GMRES did not converge (residual " << kr.relative_residual << " after "
         << kr.iterations << " iterations); lambda may be near an eigenvalue";
      throw ConvergenceError(os.str(), kr.iterations, kr.relative_residual);
    }
  }
  if (!done)
  {
    if (S.size() > opt.dense_limit)
    {
      throw ValidationError("potential support too large for the dense Fredholm path");
    }
    res.f = RestrictedFredholm(V, s, z, opt.support_cut).solve(g);
    res.method = "restricted_dense";
  }

  std::vector<cplx> Af(g.size());
  A(res.f.values(), Af);
  double rn = 0.0, gn = 0.0;
  for (std::size_t c = 0; c < Af.size(); ++c)
  {
    rn += std::norm(Af[c] - g[c]);
    gn += std::norm(g[c]);
  }
  res.residual = gn > 0.0 ? std::sqrt(rn / gn) : std::sqrt(rn);
  if (!(res.residual < opt.residual_tol))
  {
    std::ostringstream os;
    os << "Fredholm residual " << res.residual << " exceeds " << opt.residual_tol
       << "; lambda may be near an eigenvalue";
    throw ConvergenceError(os.str(), res.iterations, res.residual);
  }
  return res;
}

FredholmBoundary fredholm_boundary_value(double s, double lambda, double eps, int sign,
                                         const Field &V, const Field &g,
                                         const FredholmOptions &opt)
{
  if (!(eps > 0.0))
  {
    throw ValidationError("boundary value ladder needs eps > 0");
  }
  const double sg = sign >= 0 ? 1.0 : -1.0;
  FredholmBoundary b{g, g, g};
  b.eps_coarse = eps;
  b.eps_fine = 0.5 * eps;
  b.coarse = fredholm_solve(s, cplx(lambda, sg * eps), V, g, opt).f;
  b.fine = fredholm_solve(s, cplx(lambda, sg * 0.5 * eps), V, g, opt).f;
  b.extrapolated = 2.0 * b.fine - b.coarse;
  return b;
}

}  // namespace fracscat
