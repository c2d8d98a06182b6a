// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_FIELD_HPP
#define FRACSCAT_FIELD_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "fracscat/grid.hpp"

namespace fracscat
{

using cplx = std::complex<double>;

enum class Space
{
  physical,
  fourier
};

const char *to_string(Space s);

// Complex samples on a grid, tagged with the space they live in.
class Field
{
public:
  explicit Field(GridSpec grid, Space space = Space::physical);
  Field(GridSpec grid, Space space, std::vector<cplx> values);

  static Field from_function(const GridSpec &grid,
                             const std::function<cplx(const Point &)> &f);
  static Field from_real(const GridSpec &grid, std::span<const double> values);

  const GridSpec &grid() const { return grid_; }
  Space space() const { return space_; }
  std::size_t size() const { return v_.size(); }

  std::span<const cplx> values() const { return v_; }
  std::span<cplx> values() { return v_; }
  cplx *data() { return v_.data(); }
  const cplx *data() const { return v_.data(); }

  cplx operator[](std::size_t i) const { return v_[i]; }
  cplx &operator[](std::size_t i) { return v_[i]; }

  Field &operator+=(const Field &o);
  Field &operator-=(const Field &o);
  Field &operator*=(cplx a);

  // Pointwise product; both operands must share grid and space.
  Field times(const Field &o) const;
  Field conjugate() const;
  bool all_finite() const;

private:
  GridSpec grid_;
  Space space_;
  std::vector<cplx> v_;
};

Field operator+(Field a, const Field &b);
Field operator-(Field a, const Field &b);
Field operator*(cplx a, Field f);

void require_same_grid(const Field &a, const Field &b, const char *op);
void require_space(const Field &f, Space s, const char *op);

// Quadrature weight of one cell: h^d physically, (2pi)^{-d} dxi^d in Fourier
// space, so that both norms agree under Plancherel.
double quadrature_weight(const Field &f);

double l2_norm(const Field &f);
double l2_norm_sq(const Field &f);
// <a, b> = sum a conj(b) * weight
cplx inner(const Field &a, const Field &b);
double max_abs(const Field &f);
double distance(const Field &a, const Field &b);

// Fraction of L2 mass in the outermost layer of cells (|x_i| >= L - width).
double boundary_mass_fraction(const Field &u, double width);

}  // namespace fracscat

#endif  // FRACSCAT_FIELD_HPP
