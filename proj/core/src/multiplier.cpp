// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/multiplier.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"

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

}  // namespace

double smooth_step(double u)
{
  if (u <= 0.0)
  {
    return 0.0;
  }
  if (u >= 1.0)
  {
    return 1.0;
  }
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

double lp_bump(double r)
{
  constexpr double lo = 6.0 / 7.0, hi = 12.0 / 7.0;
  if (r <= lo || r >= 2.0)
  {
    return 0.0;
  }
  if (r < 1.0)
  {
    return smooth_step(7.0 * r - 6.0);
  }
  if (r <= hi)
  {
    return 1.0;
  }
  return 1.0 - smooth_step(3.5 * r - 6.0);
}

double lp_low(double r)
{
  if (r <= 12.0 / 7.0)
  {
    return 1.0;
  }
  if (r >= 2.0)
  {
    return 0.0;
  }
  return 1.0 - smooth_step(3.5 * r - 6.0);
}

int lp_max_block(const GridSpec &g)
{
  const double rmax = g.nyquist() * std::sqrt(static_cast<double>(g.dim()));
  // Phi(2^{-j} r) vanishes once 2^{-j} rmax <= 6/7.
  return std::max(1, static_cast<int>(std::ceil(std::log2(rmax * 7.0 / 6.0))));
}

void validate(const MultiplierSpec &m)
{
  std::visit(overloaded{
               [](const FracLaplacian &f)
               {
                 if (!(f.s > 0.0))
                   throw ValidationError("frac_laplacian requires s > 0");
               },
               [](const BesselSymbol &) {},
               [](const FreePhase &f)
               {
                 if (!(f.s > 0.0))
                   throw ValidationError("free_phase requires s > 0");
               },
               [](const ResolventSymbol &r)
               {
                 if (!(r.s > 0.0))
                   throw ValidationError("resolvent symbol requires s > 0");
                 if (r.z.imag() == 0.0 && r.z.real() >= 0.0)
                   throw DomainError("resolvent symbol with real z >= 0 is singular on the shell; "
                                     "use the resolvent module boundary values");
               },
               [](const LpBlock &b)
               {
                 if (b.j < 0)
                   throw ValidationError("lp_block index must be >= 0");
               },
               [](const LpLow &) {},
               [](const CustomSymbol &c)
               {
                 if (!c.fn)
                   throw ValidationError("custom symbol without a function");
               },
             },
             m);
}

cplx symbol_at(const MultiplierSpec &m, const Point &xi, double norm)
{
  return std::visit(
    overloaded{
      [&](const FracLaplacian &f) -> cplx { return std::pow(norm, f.s); },
      [&](const BesselSymbol &b) -> cplx { return std::pow(1.0 + norm * norm, 0.5 * b.tau); },
      [&](const FreePhase &f) -> cplx
      { return std::polar(1.0, -f.t * std::pow(norm, f.s)); },
      [&](const ResolventSymbol &r) -> cplx { return 1.0 / (std::pow(norm, r.s) - r.z); },
      [&](const LpBlock &b) -> cplx
      { return b.j == 0 ? lp_low(norm) : lp_bump(std::ldexp(norm, -b.j)); },
      [&](const LpLow &) -> cplx { return lp_low(norm); },
      [&](const CustomSymbol &c) -> cplx { return c.fn(xi, norm); },
    },
    m);
}

std::vector<cplx> symbol_table(const MultiplierSpec &m, const GridSpec &g)
{
  validate(m);
  std::vector<cplx> t(g.cells());
  for (std::size_t c = 0; c < g.cells(); ++c)
  {
    const Point xi = g.frequency_vector(c);
    const double nrm = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    t[c] = symbol_at(m, xi, nrm);
  }
  return t;
}

Field apply_table(std::span<const cplx> table, const Field &u)
{
  const auto &g = u.grid();
  if (table.size() != g.cells())
  {
    throw GridMismatchError("symbol table does not match grid");
  }
  Field out(u);
  if (u.space() == Space::fourier)
  {
    for (std::size_t c = 0; c < out.size(); ++c)
    {
      out[c] *= table[c];
    }
    return out;
  }
  // Physical input: the origin phase and quadrature weights cancel between
  // the forward and inverse transforms, leaving ifft(sym * fft(u)) / N^d.
  detail::fft_inplace(g.dim(), g.points(), out.data(), -1);
  const double inv = 1.0 / static_cast<double>(g.cells());
  for (std::size_t c = 0; c < out.size(); ++c)
  {
    out[c] *= table[c] * inv;
  }
  detail::fft_inplace(g.dim(), g.points(), out.data(), +1);
  return out;
}

Field apply_multiplier(const MultiplierSpec &m, const Field &u)
{
  return apply_table(symbol_table(m, u.grid()), u);
}

Field frac_laplacian(double s, const Field &u) { return apply_multiplier(FracLaplacian{s}, u); }

Field bessel_potential(double tau, const Field &u)
{
  if (tau == 0.0)
  {
    return u;
  }
  return apply_multiplier(BesselSymbol{tau}, u);
}

Field lp_block(int j, const Field &u) { return apply_multiplier(LpBlock{j}, u); }

double bessel_kernel(double s, int dim, double r)
{
  if (!(s > 0.0) || !(r > 0.0))
  {
    throw DomainError("bessel_kernel requires s > 0 and r > 0");
  }
  const double n = dim;
  const double nu = std::abs(0.5 * (n - s));
  const double c = std::pow(2.0, 1.0 - 0.5 * (n + s)) /
                   (std::pow(std::numbers::pi, 0.5 * n) * std::tgamma(0.5 * s));
  return c * std::pow(r, 0.5 * (s - n)) * std::cyl_bessel_k(nu, r);
}

}  // namespace fracscat
