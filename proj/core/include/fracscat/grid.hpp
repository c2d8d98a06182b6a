// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_GRID_HPP
#define FRACSCAT_GRID_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace fracscat
{

using Point = std::array<double, 3>;

// Uniform periodic grid on the torus [-L, L)^d, N points per axis.
// Node n sits at x_n = -L + n h with h = 2L/N. Frequencies are stored in FFT
// order: index i carries k = i for i < N/2 and k = i - N otherwise, xi = k*pi/L.
class GridSpec
{
public:
  GridSpec(int dim, double half_width, int points);

  int dim() const { return dim_; }
  double half_width() const { return L_; }
  int points() const { return n_; }
  std::size_t cells() const { return cells_; }
  double spacing() const { return 2.0 * L_ / n_; }
  double freq_step() const;
  double nyquist() const;
  double cell_volume() const;
  double freq_cell_volume() const;

  double coordinate(int i) const { return -L_ + i * spacing(); }
  int wavenumber(int i) const { return i < n_ / 2 ? i : i - n_; }
  double frequency(int i) const;

  // Row-major multi-index of a flat cell index (unused axes are 0).
  std::array<int, 3> unravel(std::size_t cell) const;
  std::size_t ravel(const std::array<int, 3> &idx) const;

  Point position(std::size_t cell) const;
  double radius(std::size_t cell) const;
  Point frequency_vector(std::size_t cell) const;
  double frequency_norm(std::size_t cell) const;

  std::vector<double> radii() const;
  std::vector<double> frequency_norms() const;

  bool operator==(const GridSpec &o) const
  {
    return dim_ == o.dim_ && n_ == o.n_ && L_ == o.L_;
  }
  bool operator!=(const GridSpec &o) const { return !(*this == o); }

private:
  int dim_;
  double L_;
  int n_;
  std::size_t cells_;
};

}  // namespace fracscat

#endif  // FRACSCAT_GRID_HPP
