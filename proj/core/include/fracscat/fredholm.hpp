// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_FREDHOLM_HPP
#define FRACSCAT_FREDHOLM_HPP

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracscat/battery.hpp"
#include "fracscat/field.hpp"
#include "fracscat/krylov.hpp"

namespace fracscat
{

// Cells where |V| exceeds cut * max|V|.
std::vector<std::size_t> potential_support(const Field &V, double cut = 1e-16);

// Kernel k of the periodic convolution R0(z) on the lattice:
// (R0 u)_i = sum_j k[i - j] u_j, index differences taken per axis mod N.
std::vector<cplx> resolvent_kernel(const GridSpec &grid, double s, cplx z);

// I + V R0(z) restricted to supp V. Since f - g is supported where V is,
// (I + V R0) f = g reduces to (I_S + V_S R0_SS) w = -V_S (R0 g)_S, f = g + w.
class RestrictedFredholm
{
public:
  RestrictedFredholm(const Field &V, double s, cplx z, double cut = 1e-16);

  const std::vector<std::size_t> &support() const { return S_; }
  const Eigen::MatrixXcd &matrix() const { return A_; }

  // Correction w on the support for a given R0 g restricted to S.
  Eigen::VectorXcd correction(const Eigen::VectorXcd &r0g_on_S) const;
  Field solve(const Field &g) const;
  double smallest_singular_value() const;

private:
  GridSpec grid_;
  double s_;
  cplx z_;
  std::vector<std::size_t> S_;
  Eigen::VectorXd v_;
  Eigen::MatrixXcd A_;
  std::unique_ptr<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu_;
};

enum class FredholmMethod
{
  automatic,
  gmres,
  restricted_dense
};

struct FredholmOptions
{
  FredholmMethod method = FredholmMethod::automatic;
  KrylovOptions krylov{80, 4000, 1e-11};
  double residual_tol = 1e-8;
  std::size_t dense_limit = 4096;
  double support_cut = 1e-16;
};

struct FredholmResult
{
  Field f;
  double residual = 0.0;
  int iterations = 0;
  std::string method;
};

// Solves (I + V R0(z)) f = g; verifies the residual postcondition.
FredholmResult fredholm_solve(double s, cplx z, const Field &V, const Field &g,
                              const FredholmOptions &opt = {});

struct FredholmBoundary
{
  Field extrapolated;
  Field coarse;
  Field fine;
  double eps_coarse = 0.0;
  double eps_fine = 0.0;
};

// Two-point Richardson from eps and eps/2 toward the boundary value at lambda +- i0.
FredholmBoundary fredholm_boundary_value(double s, double lambda, double eps, int sign,
                                         const Field &V, const Field &g,
                                         const FredholmOptions &opt = {});

struct DistortedSample
{
  double lambda = 0.0;
  double rho = 0.0;
  cplx plus;
  cplx minus;
};

// F_{sign} f at +-lambda^{1/s} for each lambda, from the trace of
// (I + V R0(lambda + i sign eps))^{-1} f. One dimension only.
std::vector<DistortedSample> distorted_ft_1d(double s, const std::vector<double> &lambdas,
                                             const Field &V, const Field &f, int sign, double eps);

struct CompletenessOptions
{
  // Largest shell radius; 0 picks the Nyquist-limited maximum.
  double rho_max = 10.0;
  // eps = m * eps_floor at each shell, combined as 2 a(m1) - a(m2).
  double eps_multiple = 4.0;
  int sign = +1;
};

struct CompletenessRow
{
  std::string function;
  double norm_sq = 0.0;
  double projection = 0.0;
  double continuous = 0.0;
  double functional = 0.0;
  double relative_error = 0.0;
};

struct CompletenessReport
{
  std::vector<CompletenessRow> rows;
  std::size_t shells = 0;
  double rho_max = 0.0;
};

// Compares (2pi)^{-1} \int sum_+- |F f|^2 d lambda / (s lambda^{(s-1)/s}) with
// ||f||^2 - sum_k |<f, u_k>|^2 on the given battery; eigenvectors must be
// unit-norm fields on the same grid.
CompletenessReport completeness_1d(double s, const Field &V, const std::vector<TestFunction> &battery,
                                   const std::vector<Field> &eigenvectors,
                                   const CompletenessOptions &opt = {});

}  // namespace fracscat

#endif  // FRACSCAT_FREDHOLM_HPP
