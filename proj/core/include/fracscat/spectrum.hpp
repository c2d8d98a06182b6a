// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_SPECTRUM_HPP
#define FRACSCAT_SPECTRUM_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracscat/dyadic.hpp"
#include "fracscat/field.hpp"

namespace fracscat
{

// F^{-1}(|xi|^s u^) + V u
Field apply_hamiltonian(const Field &u, const Field &V, double s);

// Real symmetric matrix of H on the lattice (cell values, Euclidean pairing).
Eigen::MatrixXd hamiltonian_matrix(const Field &V, double s);

struct EigenPair
{
  double lambda = 0.0;
  Field u;              // unit L2 norm, phase fixed so the largest entry is real positive
  double residual = 0.0;  // ||H u - lambda u||
  int multiplicity = 1;
  int cluster = 0;
  bool converged = true;
};

struct EigenOptions
{
  double window_lo = -std::numeric_limits<double>::infinity();
  double window_hi = 0.0;
  double tol = 1e-8;
  double cluster_tol = 1e-6;
  int max_iterations = 400;     // Lanczos steps
  double inner_tol = 1e-14;     // shift-invert solves
  int inner_max = 2000;
  std::uint64_t seed = 12345;
  std::size_t dense_limit = 4096;
  bool allow_dense_fallback = true;
};

struct EigenRun
{
  std::vector<EigenPair> pairs;
  int iterations = 0;
  std::string method;
  bool complete = true;  // false when some pair missed tol
};

// Shift-invert Lanczos on (H - sigma)^{-1}, sigma = min(min V, 0) - 1, inner
// solves by CG preconditioned with (|xi|^s - sigma)^{-1}. Returns at most
// `count` pairs inside the window, lowest first.
EigenRun eigen_solve(const Field &V, double s, int count, const EigenOptions &opt = {});
EigenRun eigen_solve_dense(const Field &V, double s, int count, const EigenOptions &opt = {});

struct CharacterizationResidual
{
  double plus = 0.0;
  double minus = 0.0;
  double value() const { return std::max(plus, minus); }
};

// ||u + R0(lambda +- i eps) V u|| / ||u||. eps = 0 is allowed for lambda < 0;
// for lambda > 0 the eps, eps/2 pair is extrapolated linearly.
CharacterizationResidual eigen_characterization_residual(const EigenPair &pair, const Field &V,
                                                         double s, double eps);

struct DecayProfile
{
  double eps = 0.0;
  double s_prime = 0.0;
  double exponent = 0.0;  // weight <x>^exponent
  std::vector<double> radii;
  std::vector<double> W;
  double saturation_ratio = 0.0;  // W(L/2) / W(L/4)
  bool saturated = false;
  double bstar_weighted = 0.0;  // ||<x>^{s+1/2} J_s u||_{B*}
  double vu_b_norm = 0.0;       // ||V u||_B
  double proxy_ratio = 0.0;     // W(L/2) / ||V u||_B
};

inline constexpr double decay_saturation_ratio = 1.05;

// W(rho) = ||<x>^exponent J_{s'} u||_{L2(|x| < rho)} on rho in {L/16, L/8, L/4, L/2}.
DecayProfile weighted_profile(const Field &u, double exponent, double s_prime);

// One profile per (eps, s') with exponent s - eps, plus the B*/B figures.
std::vector<DecayProfile> decay_profile(const EigenPair &pair, const Field &V, double s,
                                        const std::vector<double> &eps_list,
                                        const std::vector<double> &s_prime_list);

struct LambdaScanOptions
{
  double threshold_factor = 1e-3;  // of the median smallest singular value
  double refine_tol = 1e-10;
  int threads = 1;
};

struct LambdaCandidate
{
  double lambda = 0.0;
  double sigma_min = 0.0;
  double margin = std::numeric_limits<double>::infinity();  // to the nearest other candidate
};

struct LambdaScan
{
  std::vector<double> lambdas;
  std::vector<double> sigma_min;
  double median = 0.0;
  double threshold = 0.0;
  std::vector<LambdaCandidate> candidates;
};

// Smallest singular value of I + V R0(lambda + i eps) on supp V, eps = 0 for
// lambda < 0 and the lattice floor otherwise. Local minima are refined by Brent
// and kept when below threshold_factor * median.
LambdaScan lambda_scan(const Field &V, double s, const std::vector<double> &lambdas,
                       const LambdaScanOptions &opt = {});

double fredholm_sigma_min(const Field &V, double s, double lambda);

}  // namespace fracscat

#endif
