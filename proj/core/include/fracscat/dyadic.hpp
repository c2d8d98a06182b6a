// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_DYADIC_HPP
#define FRACSCAT_DYADIC_HPP

#include <functional>
#include <vector>

#include "fracscat/field.hpp"

namespace fracscat
{

// Dyadic annuli X_j = {R_{j-1} < |x| <= R_j}, R_0 = 0, R_j = 2^{j-1}.
// X_1 also holds the origin. Ties |x| = R_j go to the inner annulus.
class DyadicLayout
{
public:
  explicit DyadicLayout(const GridSpec &grid);

  const GridSpec &grid() const { return grid_; }
  int j_max() const { return j_max_; }
  // R_j for j >= 0.
  static double radius(int j) { return j <= 0 ? 0.0 : std::ldexp(1.0, j - 1); }
  // Annulus index (1-based) containing radius r; may exceed j_max.
  static int annulus_for_radius(double r);

  int annulus_of(std::size_t cell) const { return label_[cell]; }
  const std::vector<std::size_t> &cells_in(int j) const { return members_.at(j - 1); }

private:
  GridSpec grid_;
  int j_max_;
  std::vector<int> label_;
  std::vector<std::vector<std::size_t>> members_;
};

struct NormReport
{
  double value = 0.0;
  // Per-annulus L2 norms, index j-1.
  std::vector<double> annulus;
  // Weighted contribution of the outermost annulus (truncation audit).
  double last_term = 0.0;
  int argmax = 0;
};

using RadialWeight = std::function<double(double)>;

// mu_eps(t) = (1+t)^{s+1/2} (1+eps t)^{-s-1/2}
RadialWeight mu_weight(double s, double eps);
// (1+t)^r
RadialWeight power_weight(double r);

std::vector<double> annulus_norms(const Field &u, const DyadicLayout &layout);

NormReport b_norm_report(const Field &u, const DyadicLayout &layout);
NormReport bstar_norm_report(const Field &u, const DyadicLayout &layout);

double b_norm(const Field &u, const DyadicLayout &layout);
double bstar_norm(const Field &u, const DyadicLayout &layout);
// bstar_norm(J_s u)
double bsstar_norm(const Field &u, double s, const DyadicLayout &layout);

Field apply_radial_weight(const Field &u, const RadialWeight &mu);
double weighted_bstar_norm(const Field &u, const RadialWeight &mu, const DyadicLayout &layout);
double weighted_b_norm(const Field &u, const RadialWeight &mu, const DyadicLayout &layout);

}  // namespace fracscat

#endif  // FRACSCAT_DYADIC_HPP
