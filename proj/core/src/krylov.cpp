// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/error.hpp"
#include "fracscat/krylov.hpp"

#include <cmath>
#include <vector>

namespace fracscat
{

double euclidean_norm(std::span<const cplx> v)
{
  double acc = 0.0;
  for (auto z : v)
  {
    acc += std::norm(z);
  }
  return std::sqrt(acc);
}

namespace
{

cplx dot(std::span<const cplx> a, std::span<const cplx> b)
{
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    acc += std::conj(a[i]) * b[i];
  }
  return acc;
}

}  // namespace

KrylovResult gmres(const LinearMap &A, std::span<const cplx> b, std::span<cplx> x,
                   const KrylovOptions &opt)
{
  const std::size_t n = b.size();
  KrylovResult res;
  const double bnorm = euclidean_norm(b);
  if (bnorm == 0.0)
  {
    std::fill(x.begin(), x.end(), cplx(0.0));
    res.converged = true;
    return res;
  }
  const int m = std::max(1, opt.restart);
  std::vector<std::vector<cplx>> Vb(m + 1, std::vector<cplx>(n));
  std::vector<cplx> H((m + 1) * m), cs(m), sn(m), g(m + 1), w(n), r(n);
  auto Hat = [&](int i, int j) -> cplx & { return H[i * m + j]; };

  while (res.iterations < opt.max_iterations)
  {
    A(x, r);
    for (std::size_t i = 0; i < n; ++i)
    {
      r[i] = b[i] - r[i];
    }
    double beta = euclidean_norm(r);
    res.relative_residual = beta / bnorm;
    if (res.relative_residual < opt.tol)
    {
      res.converged = true;
      return res;
    }
    for (std::size_t i = 0; i < n; ++i)
    {
      Vb[0][i] = r[i] / beta;
    }
    std::fill(g.begin(), g.end(), cplx(0.0));
    g[0] = beta;
    int k = 0;
    for (; k < m && res.iterations < opt.max_iterations; ++k)
    {
      ++res.iterations;
      A(Vb[k], w);
      for (int i = 0; i <= k; ++i)
      {
        const cplx hik = dot(Vb[i], w);
        Hat(i, k) = hik;
        for (std::size_t q = 0; q < n; ++q)
        {
          w[q] -= hik * Vb[i][q];
        }
      }
      const double hn = euclidean_norm(w);
      Hat(k + 1, k) = hn;
      if (hn > 0.0)
      {
        for (std::size_t q = 0; q < n; ++q)
        {
          Vb[k + 1][q] = w[q] / hn;
        }
      }
      for (int i = 0; i < k; ++i)
      {
        const cplx t = std::conj(cs[i]) * Hat(i, k) + std::conj(sn[i]) * Hat(i + 1, k);
        Hat(i + 1, k) = -sn[i] * Hat(i, k) + cs[i] * Hat(i + 1, k);
        Hat(i, k) = t;
      }
      const cplx a = Hat(k, k), bb = Hat(k + 1, k);
      const double den = std::sqrt(std::norm(a) + std::norm(bb));
      cs[k] = a / den;
      sn[k] = bb / den;
      Hat(k, k) = den;
      Hat(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = std::conj(cs[k]) * g[k];
      res.relative_residual = std::abs(g[k + 1]) / bnorm;
      if (res.relative_residual < opt.tol || hn == 0.0)
      {
        ++k;
        break;
      }
    }
    // Back substitution for the k x k upper-triangular system.
    std::vector<cplx> y(k);
    for (int i = k - 1; i >= 0; --i)
    {
      cplx acc = g[i];
      for (int j = i + 1; j < k; ++j)
      {
        acc -= Hat(i, j) * y[j];
      }
      y[i] = acc / Hat(i, i);
    }
    for (int j = 0; j < k; ++j)
    {
      for (std::size_t q = 0; q < n; ++q)
      {
        x[q] += y[j] * Vb[j][q];
      }
    }
  }
  A(x, r);
  for (std::size_t i = 0; i < n; ++i)
  {
    r[i] = b[i] - r[i];
  }
  res.relative_residual = euclidean_norm(r) / bnorm;
  res.converged = res.relative_residual < opt.tol;
  return res;
}

KrylovResult pcg(const LinearMap &A, const LinearMap &Minv, std::span<const cplx> b,
                 std::span<cplx> x, const KrylovOptions &opt)
{
  const std::size_t n = b.size();
  KrylovResult res;
  const double bnorm = euclidean_norm(b);
  if (bnorm == 0.0)
  {
    std::fill(x.begin(), x.end(), cplx(0.0));
    res.converged = true;
    return res;
  }
  std::vector<cplx> r(n), z(n), p(n), q(n);
  A(x, q);
  for (std::size_t i = 0; i < n; ++i)
  {
    r[i] = b[i] - q[i];
  }
  Minv(r, z);
  p = z;
  cplx rz = dot(r, z);
  res.relative_residual = euclidean_norm(r) / bnorm;
  while (res.relative_residual >= opt.tol && res.iterations < opt.max_iterations)
  {
    ++res.iterations;
    A(p, q);
    const cplx alpha = rz / dot(p, q);
    for (std::size_t i = 0; i < n; ++i)
    {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    res.relative_residual = euclidean_norm(r) / bnorm;
    if (res.relative_residual < opt.tol)
    {
      break;
    }
    Minv(r, z);
    const cplx rz_new = dot(r, z);
    const cplx beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i)
    {
      p[i] = z[i] + beta * p[i];
    }
  }
  res.converged = res.relative_residual < opt.tol;
  return res;
}

}  // namespace fracscat
