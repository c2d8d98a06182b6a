// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_MULTIPLIER_HPP
#define FRACSCAT_MULTIPLIER_HPP

#include <functional>
#include <variant>
#include <vector>

#include "fracscat/field.hpp"

namespace fracscat
{

// |xi|^s
struct FracLaplacian
{
  double s;
};
// <xi>^tau = (1+|xi|^2)^{tau/2}
struct BesselSymbol
{
  double tau;
};
// e^{-i t |xi|^s}
struct FreePhase
{
  double s;
  double t;
};
// (|xi|^s - z)^{-1}, Im z != 0
struct ResolventSymbol
{
  double s;
  cplx z;
};
// Phi(2^{-j} xi) for j >= 1; j = 0 selects the low block.
struct LpBlock
{
  int j;
};
struct LpLow
{
};
struct CustomSymbol
{
  std::function<cplx(const Point &xi, double norm)> fn;
};

using MultiplierSpec =
  std::variant<FracLaplacian, BesselSymbol, FreePhase, ResolventSymbol, LpBlock, LpLow, CustomSymbol>;

// Throws ValidationError for bad parameters.
void validate(const MultiplierSpec &m);
cplx symbol_at(const MultiplierSpec &m, const Point &xi, double norm);

// Symbol sampled on the frequency lattice, FFT order.
std::vector<cplx> symbol_table(const MultiplierSpec &m, const GridSpec &g);

// r(D)u; the output is in the same space as u.
Field apply_multiplier(const MultiplierSpec &m, const Field &u);
// Same, with a precomputed symbol table (hot loops).
Field apply_table(std::span<const cplx> table, const Field &u);

Field frac_laplacian(double s, const Field &u);
Field bessel_potential(double tau, const Field &u);
// j = 0 is the low block.
Field lp_block(int j, const Field &u);

// Smooth step S on [0,1]: 0 for u <= 0, 1 for u >= 1, C-infinity.
double smooth_step(double u);
// Radial profile psi of Phi: support [6/7, 2], equal to 1 on [1, 12/7].
double lp_bump(double r);
// Low block profile: 1 on [0, 12/7], decays to 0 at 2.
double lp_low(double r);
// Largest j whose block meets the frequency lattice.
int lp_max_block(const GridSpec &g);

// Closed-form kernel of J_{-s} = (I-Delta)^{-s/2} in dimension n, r > 0.
double bessel_kernel(double s, int dim, double r);

}  // namespace fracscat

#endif  // FRACSCAT_MULTIPLIER_HPP
