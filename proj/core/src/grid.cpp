// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracscat/error.hpp"

namespace fracscat
{

GridSpec::GridSpec(int dim, double half_width, int points) : dim_(dim), L_(half_width), n_(points)
{
  if (dim < 1 || dim > 3)
  {
    throw ValidationError("grid dim must be 1, 2 or 3, got " + std::to_string(dim));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width))
  {
    throw ValidationError("grid half_width must be positive");
  }
  if (points < 2 || (points & (points - 1)) != 0)
  {
    throw ValidationError("points per axis must be a power of two >= 2, got " +
                          std::to_string(points));
  }
  // 2^28 complex doubles is 4 GiB; anything larger is a configuration mistake here.
  const double total = std::pow(static_cast<double>(points), dim);
  if (total > static_cast<double>(1u << 28))
  {
    throw ValidationError("grid has too many cells for this build");
  }
  cells_ = static_cast<std::size_t>(total);
}

double GridSpec::freq_step() const { return std::numbers::pi / L_; }

double GridSpec::nyquist() const { return std::numbers::pi / spacing(); }

double GridSpec::cell_volume() const { return std::pow(spacing(), dim_); }

double GridSpec::freq_cell_volume() const { return std::pow(freq_step(), dim_); }

double GridSpec::frequency(int i) const { return wavenumber(i) * freq_step(); }

std::array<int, 3> GridSpec::unravel(std::size_t cell) const
{
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a)
  {
    idx[a] = static_cast<int>(cell % n_);
    cell /= n_;
  }
  return idx;
}

std::size_t GridSpec::ravel(const std::array<int, 3> &idx) const
{
  std::size_t c = 0;
  for (int a = 0; a < dim_; ++a)
  {
    c = c * n_ + static_cast<std::size_t>(idx[a]);
  }
  return c;
}

Point GridSpec::position(std::size_t cell) const
{
  auto idx = unravel(cell);
  Point p{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a)
  {
    p[a] = coordinate(idx[a]);
  }
  return p;
}

double GridSpec::radius(std::size_t cell) const
{
  auto p = position(cell);
  return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

Point GridSpec::frequency_vector(std::size_t cell) const
{
  auto idx = unravel(cell);
  Point p{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a)
  {
    p[a] = frequency(idx[a]);
  }
  return p;
}

double GridSpec::frequency_norm(std::size_t cell) const
{
  auto p = frequency_vector(cell);
  return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

std::vector<double> GridSpec::radii() const
{
  std::vector<double> r(cells_);
  for (std::size_t c = 0; c < cells_; ++c)
  {
    r[c] = radius(c);
  }
  return r;
}

std::vector<double> GridSpec::frequency_norms() const
{
  std::vector<double> r(cells_);
  for (std::size_t c = 0; c < cells_; ++c)
  {
    r[c] = frequency_norm(c);
  }
  return r;
}

}  // namespace fracscat
