// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace fracscat
{

namespace detail
{

namespace
{

struct PlanCache
{
  std::mutex mu;
  std::map<std::tuple<int, int, int>, fftw_plan> plans;

  ~PlanCache()
  {
    for (auto &kv : plans)
    {
      fftw_destroy_plan(kv.second);
    }
  }
};

PlanCache &cache()
{
  static PlanCache c;
  return c;
}

// Planning is not thread-safe in FFTW; execution of an existing plan on new
// arrays (fftw_execute_dft) is. FFTW_ESTIMATE keeps plans, and therefore
// results, independent of timing.
fftw_plan plan_for(int dim, int n, int sign)
{
  auto &c = cache();
  std::lock_guard lock(c.mu);
  auto key = std::make_tuple(dim, n, sign);
  auto it = c.plans.find(key);
  if (it != c.plans.end())
  {
    return it->second;
  }
  std::size_t total = 1;
  int dims[3] = {n, n, n};
  for (int a = 0; a < dim; ++a)
  {
    total *= static_cast<std::size_t>(n);
  }
  auto *buf = fftw_alloc_complex(total);
  fftw_plan p = fftw_plan_dft(dim, dims, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  c.plans.emplace(key, p);
  return p;
}

}  // namespace

void fft_inplace(int dim, int n, cplx *data, int sign)
{
  auto *p = reinterpret_cast<fftw_complex *>(data);
  fftw_execute_dft(plan_for(dim, n, sign), p, p);
}

}  // namespace detail

namespace
{

// (-1)^{k_1+...+k_d}: the phase e^{-i xi_k x_0} picked up because the grid
// starts at x_0 = -L instead of 0.
inline double origin_phase(const GridSpec &g, std::size_t cell)
{
  auto idx = g.unravel(cell);
  int parity = 0;
  for (int a = 0; a < g.dim(); ++a)
  {
    parity += idx[a];
  }
  return (parity & 1) ? -1.0 : 1.0;
}

}  // namespace

Field forward_transform(const Field &u)
{
  require_space(u, Space::physical, "forward_transform");
  const auto &g = u.grid();
  Field out(g, Space::fourier, std::vector<cplx>(u.values().begin(), u.values().end()));
  detail::fft_inplace(g.dim(), g.points(), out.data(), -1);
  const double w = g.cell_volume();
  for (std::size_t c = 0; c < out.size(); ++c)
  {
    out[c] *= w * origin_phase(g, c);
  }
  return out;
}

Field inverse_transform(const Field &uhat)
{
  require_space(uhat, Space::fourier, "inverse_transform");
  const auto &g = uhat.grid();
  Field out(g, Space::physical, std::vector<cplx>(uhat.values().begin(), uhat.values().end()));
  for (std::size_t c = 0; c < out.size(); ++c)
  {
    out[c] *= origin_phase(g, c);
  }
  detail::fft_inplace(g.dim(), g.points(), out.data(), +1);
  const double w = 1.0 / (g.cell_volume() * static_cast<double>(g.cells()));
  for (auto &z : out.values())
  {
    z *= w;
  }
  return out;
}

cplx dtft(const Field &u, const Point &xi)
{
  require_space(u, Space::physical, "dtft");
  const auto &g = u.grid();
  cplx acc = 0.0;
  for (std::size_t c = 0; c < u.size(); ++c)
  {
    if (u[c] == cplx(0.0))
    {
      continue;
    }
    const Point x = g.position(c);
    acc += u[c] * std::polar(1.0, -(xi[0] * x[0] + xi[1] * x[1] + xi[2] * x[2]));
  }
  return acc * g.cell_volume();
}

}  // namespace fracscat
