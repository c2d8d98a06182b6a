// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_DYNAMICS_HPP
#define FRACSCAT_DYNAMICS_HPP

#include <string>
#include <vector>

#include "fracscat/dyadic.hpp"
#include "fracscat/field.hpp"
#include "fracscat/fit.hpp"
#include "fracscat/potential.hpp"

namespace fracscat
{

struct PacketOptions
{
  // Spatial centre x0 of the packet at t = 0.
  Point center{0.0, 0.0, 0.0};
  // Propagation direction. In 1-D only its sign matters and 0 keeps both
  // half-lines of the annulus.
  Point direction{1.0, 0.0, 0.0};
  double support_tolerance = 1e-10;
  double width_mass = 1e-8;
};

// Unit-norm Gaussian packet with Fourier mass confined to r_min <= |xi| <= r_max.
struct WavePacket
{
  Field u;
  double s = 1.0;
  double r_min = 0.0;
  double r_max = 0.0;
  double v_min = 0.0;
  double v_max = 0.0;
  // Radius about the origin holding all but width_mass of |u|^2.
  double width = 0.0;
  // Relative Fourier mass outside the annulus.
  double leakage = 0.0;
};

double group_speed(double s, double r);

WavePacket make_wave_packet(const GridSpec &grid, double s, double r_min, double r_max,
                            const PacketOptions &opt = {});

// Largest time before the packet front reaches a periodic image.
double time_horizon(const WavePacket &p);
// Throws GuardError("torus_wrap") if t exceeds the horizon.
void check_horizon(const WavePacket &p, double t);

// e^{-itH0} u
Field free_evolve(const Field &u, double t, double s);

// Strang splitting for e^{-itH}, H = |D|^s + V.
class SplitStep
{
public:
  SplitStep(const Field &V, double s, double dt);
  Field evolve(const Field &u, double t) const;
  double dt() const { return dt_; }

private:
  GridSpec grid_;
  double s_, dt_;
  std::vector<cplx> half_v_fwd_, half_v_bwd_, kin_fwd_, kin_bwd_;
};

Field full_evolve(const Field &u, double t, const Field &V, double dt, double s);

struct CookOptions
{
  double t_min = 1.0;
  int points_per_octave = 4;
  double integrable_below = -1.1;
  double nonintegrable_above = -0.95;
  // Tail fit uses t >= clearance * width / v_min, once the packet has left the core.
  double clearance = 2.0;
};

struct CookProfile
{
  std::vector<double> t;
  std::vector<double> g;
  std::vector<double> cumulative;
  LinearFit fit;
  double fit_from = 0.0;
  double tail_exponent = 0.0;
  std::string verdict;
};

CookProfile cook_profile(const WavePacket &p, const Field &V, double t_max,
                         const CookOptions &opt = {});

struct WaveOpOptions
{
  double tol = 1e-3;
  double ratio = 0.9;
  double noise_floor = 1e-12;
  double tau = 1.0;
};

struct ScatteringRecord
{
  std::vector<double> T;
  std::vector<Field> snapshots;
  std::vector<double> drift;
  std::vector<double> isometry;
  double isometry_residual = 0.0;
  double intertwining_residual = 0.0;
  bool decreasing = false;
  std::string verdict;
  WaveOpOptions options;
};

// Omega(T) u = e^{iTH} e^{-iTH0} u
Field wave_operator_apply(const Field &u, double T, const SplitStep &H, double s);

ScatteringRecord wave_operator_estimate(const WavePacket &p, const Field &V,
                                        const std::vector<double> &T_ladder, double dt,
                                        const WaveOpOptions &opt = {});

// u + i \int_0^T e^{itH0} V e^{-itH0} u dt, composite Simpson with `steps` panels.
Field born_approximation(const Field &u, const Field &V, double s, double T, int steps);

struct NonexistenceReport
{
  std::vector<int> blocks;
  std::vector<double> D;
  std::vector<double> P;
  std::vector<double> ratio;
  std::vector<double> cumulative;
  double spread = 0.0;
  double min_D = 0.0;
};

// Per-block drift D_j = \int |<V u_t, u_t>| dt over t in (1.25 R_{j-1}, 0.8 R_j).
NonexistenceReport nonexistence_drift(const WavePacket &p, const Field &V, const EpsilonRule &eps,
                                      int j_first, int j_last, int quad_points = 24);

struct LocalizationReport
{
  std::vector<double> t;
  std::vector<double> outside;
  LinearFit fit;
};

// Mass fraction outside v_min|t|/2 < |x| < 2 v_max|t|.
LocalizationReport localization_check(const WavePacket &p, const std::vector<double> &times);

}  // namespace fracscat

#endif  // FRACSCAT_DYNAMICS_HPP
