// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_POTENTIAL_HPP
#define FRACSCAT_POTENTIAL_HPP

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fracscat/dyadic.hpp"
#include "fracscat/field.hpp"
#include "fracscat/fit.hpp"

namespace fracscat
{

// eps_j = scale * j^{-power}; scale 0 gives eps_j = 0.
struct EpsilonRule
{
  double scale = 0.0;
  double power = 0.0;
  double operator()(int j) const { return scale == 0.0 ? 0.0 : scale * std::pow(j, -power); }
};

// kappa (1+|x|)^{-gamma}
struct PowerTail
{
  double kappa = 1.0;
  double gamma = 2.0;
};
// kappa (1+|x|)^{-1-eps_j} on X_j
struct AnnulusTail
{
  double kappa = 1.0;
  EpsilonRule eps;
};
// -depth exp(-|x|^2/width^2)
struct GaussianWell
{
  double depth = 1.0;
  double width = 1.0;
};
// height exp(1 - 1/(1-(|x|/radius)^2)) inside the ball, 0 outside
struct CompactBump
{
  double radius = 1.0;
  double height = 1.0;
};
struct SampledPotential
{
  std::vector<double> values;
  GridSpec grid;
};

using PotentialVariant =
  std::variant<PowerTail, AnnulusTail, GaussianWell, CompactBump, SampledPotential>;

struct PotentialSpec
{
  PotentialVariant v;

  PotentialSpec() : v(PowerTail{0.0, 1.0}) {}
  template <class T>
  PotentialSpec(T t) : v(std::move(t))
  {
  }

  // Radial with |V| nonincreasing in |x|; enables the single-center M_j shortcut.
  bool radial_monotone() const;
  bool sign_definite() const;
  bool is_zero() const;
  // Value at a point (sampled potentials are looked up at the nearest node).
  double value_at(const Point &x) const;
  std::string describe() const;
};

Field evaluate(const PotentialSpec &V, const GridSpec &grid);
// Real part of a potential field as doubles.
std::vector<double> real_samples(const Field &V);

// Lebesgue exponent of the sufficient short-range criterion.
double choose_p(double s, int dim, double delta_p = 0.1);

struct AnnulusM
{
  double value = 0.0;
  bool truncated = false;
  std::size_t centers = 0;
};

// sup over y in the closure of X_j of ||V||_{L^p(B(y,1))}.
AnnulusM annulus_M(const Field &V, const DyadicLayout &layout, int j, double p, int stride = 1,
                   bool radial_shortcut = false);
AnnulusM annulus_M(const PotentialSpec &V, int j, double p, const GridSpec &grid);

enum class RangeVerdict
{
  short_range,
  not_short_range,
  inconclusive
};
const char *to_string(RangeVerdict v);

struct ShortRangeOptions
{
  double delta_p = 0.1;
  double tail_threshold = -0.1;
  double long_threshold = -0.05;
  double min_r_squared = 0.9;
  int min_points = 4;
  int stride_1d = 1;
  int stride_nd = 4;
};

struct ShortRangeReport
{
  double p = 2.0;
  std::vector<int> j;
  std::vector<double> M;
  std::vector<double> RM;
  std::vector<double> partial_sums;
  int fit_first_j = 0;
  LinearFit fit;
  double tail_exponent = 0.0;
  RangeVerdict verdict = RangeVerdict::inconclusive;
  bool truncated = false;
  double last_term = 0.0;
  ShortRangeOptions options;
};

// Verdict from a positive dyadic series a_j against R_j, with the tail fit
// over the last half of the indices.
ShortRangeReport classify_series(const std::vector<int> &j, const std::vector<double> &a,
                                 const ShortRangeOptions &opt);

ShortRangeReport shortrange_series(const PotentialSpec &V, const GridSpec &grid, double s,
                                   const ShortRangeOptions &opt = {});

// Same test applied to the proxy series sum_j R_j^{-eps_j}.
ShortRangeReport epsilon_series(const EpsilonRule &eps, int j_last,
                                const ShortRangeOptions &opt = {});

// Norm of chi_j V J_{-s} chi_k from L^1(X_k) to L^2(X_j), |j-k| >= 2.
double offdiag_block_norm(const Field &V, const DyadicLayout &layout, int j, int k, double s,
                          int stride = 1);

}  // namespace fracscat

#endif  // FRACSCAT_POTENTIAL_HPP
