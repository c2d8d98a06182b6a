// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_RESOLVENT_HPP
#define FRACSCAT_RESOLVENT_HPP

#include <string>
#include <vector>

#include "fracscat/battery.hpp"
#include "fracscat/dyadic.hpp"
#include "fracscat/field.hpp"
#include "fracscat/fit.hpp"
#include "fracscat/krylov.hpp"

namespace fracscat
{

// z = lambda + i*sign*eps; bessel_weight applies r(D) = J_s on top.
struct ResolventQuery
{
  double s = 1.0;
  double lambda = 1.0;
  double eps = 0.1;
  int sign = +1;
  bool bessel_weight = false;

  cplx z() const { return cplx(lambda, sign * eps); }
};

// Throws GuardError("nyquist") when lambda > 0 and the shell is not resolved.
void check_shell(const GridSpec &grid, double s, double lambda);

// Frequency width below which the discrete shell is no longer resolved.
double epsilon_floor(const GridSpec &grid, double s, double lambda);

// F^{-1}((|xi|^s - z)^{-1} f^). Requires eps > 0 unless lambda < 0.
Field free_resolvent_apply(const ResolventQuery &q, const Field &f);
Field free_resolvent(double s, cplx z, const Field &f);

struct LapOptions
{
  double eps_start = 0.1;
  int points_per_decade = 2;
  double bounded_factor = 2.0;
  double growth_factor = 10.0;
};

struct LapRow
{
  std::string function;
  double lambda = 0.0;
  double eps = 0.0;
  double rho_B = 0.0;
  double rho_L2 = 0.0;
};

struct LapVerdict
{
  std::string function;
  double lambda = 0.0;
  // max/min of rho_B over the last two usable decades of eps.
  double rho_B_variation = 0.0;
  // rho_L2(eps_min) / rho_L2(100 eps_min).
  double l2_growth = 0.0;
  bool bounded = false;
  bool l2_blowup = false;
  bool usable = false;
};

struct LapSweep
{
  double s = 1.0;
  std::vector<double> lambdas;
  std::vector<double> eps_floor;
  std::vector<LapRow> rows;
  std::vector<LapVerdict> verdicts;
  LapOptions options;
};

// eps ladder eps_start * 10^{-k/ppd} truncated at the floor for lambda.
std::vector<double> eps_ladder(const GridSpec &grid, double s, double lambda,
                               const LapOptions &opt);

LapSweep lap_sweep(double s, const std::vector<double> &lambdas,
                   const std::vector<TestFunction> &battery, const DyadicLayout &layout,
                   const LapOptions &opt = {});

struct StoneResult
{
  double eps = 0.0;
  // ||D_eps - surrogate|| / ||surrogate||
  double algebraic_residual = 0.0;
  // <D_eps, g> / (2 pi i)
  cplx pairing;
  // 1-D point-shell limit (2pi)^{-1} sum_+- f^ conj(g^) / (s rho^{s-1})
  cplx shell_value;
  double shell_error = 0.0;
};

StoneResult stone_jump(double s, double lambda, double eps, const Field &f, const Field &g);

// Order of the shell-limit error from a fit of log error against log eps.
LinearFit stone_order(const std::vector<StoneResult> &ladder);

// Compact, radial, real f with f^ = 0 on the shell |xi|^s = lambda.
Field trace_free_compact(const GridSpec &grid, double s, double lambda);

// g with (|xi|^s - lambda) g^ equal to trace_free_compact, so the f built by
// weighted_lap_check is compact.
Field weighted_lap_source(const GridSpec &grid, double s, double lambda);

struct WeightedLapResult
{
  std::vector<double> eps;
  std::vector<double> delta;
  // [delta][eps], weight mu_delta
  std::vector<std::vector<double>> compliant;
  // [eps], pure power (1+t)^{s+3/2}
  std::vector<double> violating;
  // max/min of the compliant ratio over the eps ladder, worst delta.
  double compliant_eps_variation = 0.0;
  // max/min over the delta ladder at the smallest eps.
  double compliant_delta_variation = 0.0;
  // violating ratio at the smallest eps over the one at the largest eps.
  double violating_growth = 0.0;
  bool skipped = false;
};

// f^ = (|xi|^s - lambda) g^; ratio of weighted_bstar(J_s R0(lambda+i eps) f, mu)
// to weighted_b(f, mu), for mu_delta and for the pure power (1+t)^{s+3/2}.
WeightedLapResult weighted_lap_check(double s, double lambda, const std::vector<double> &eps,
                                     const std::vector<double> &delta, const Field &g,
                                     const DyadicLayout &layout);

}  // namespace fracscat

#endif  // FRACSCAT_RESOLVENT_HPP
