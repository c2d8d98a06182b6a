// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracscat/error.hpp"

namespace fracscat
{

const char *to_string(Space s) { return s == Space::physical ? "physical" : "fourier"; }

Field::Field(GridSpec grid, Space space) : grid_(grid), space_(space), v_(grid.cells()) {}

Field::Field(GridSpec grid, Space space, std::vector<cplx> values)
  : grid_(grid), space_(space), v_(std::move(values))
{
  if (v_.size() != grid_.cells())
  {
    throw ValidationError("field length " + std::to_string(v_.size()) +
                          " does not match grid cell count " + std::to_string(grid_.cells()));
  }
}

Field Field::from_function(const GridSpec &grid, const std::function<cplx(const Point &)> &f)
{
  Field out(grid);
  for (std::size_t c = 0; c < grid.cells(); ++c)
  {
    out.v_[c] = f(grid.position(c));
  }
  return out;
}

Field Field::from_real(const GridSpec &grid, std::span<const double> values)
{
  if (values.size() != grid.cells())
  {
    throw ValidationError("real sample count does not match grid");
  }
  Field out(grid);
  std::copy(values.begin(), values.end(), out.v_.begin());
  return out;
}

void require_same_grid(const Field &a, const Field &b, const char *op)
{
  if (a.grid() != b.grid())
  {
    throw GridMismatchError(std::string(op) + ": fields live on different grids");
  }
}

void require_space(const Field &f, Space s, const char *op)
{
  if (f.space() != s)
  {
    throw TagError(std::string(op) + ": expected " + to_string(s) + " field, got " +
                   to_string(f.space()));
  }
}

static void require_compatible(const Field &a, const Field &b, const char *op)
{
  require_same_grid(a, b, op);
  require_space(b, a.space(), op);
}

Field &Field::operator+=(const Field &o)
{
  require_compatible(*this, o, "field +=");
  for (std::size_t i = 0; i < v_.size(); ++i)
  {
    v_[i] += o.v_[i];
  }
  return *this;
}

Field &Field::operator-=(const Field &o)
{
  require_compatible(*this, o, "field -=");
  for (std::size_t i = 0; i < v_.size(); ++i)
  {
    v_[i] -= o.v_[i];
  }
  return *this;
}

Field &Field::operator*=(cplx a)
{
  for (auto &x : v_)
  {
    x *= a;
  }
  return *this;
}

Field Field::times(const Field &o) const
{
  require_compatible(*this, o, "pointwise product");
  Field out(*this);
  for (std::size_t i = 0; i < v_.size(); ++i)
  {
    out.v_[i] *= o.v_[i];
  }
  return out;
}

Field Field::conjugate() const
{
  Field out(*this);
  for (auto &x : out.v_)
  {
    x = std::conj(x);
  }
  return out;
}

bool Field::all_finite() const
{
  return std::all_of(v_.begin(), v_.end(), [](cplx z)
                     { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Field operator+(Field a, const Field &b) { return a += b; }
Field operator-(Field a, const Field &b) { return a -= b; }
Field operator*(cplx a, Field f) { return f *= a; }

double quadrature_weight(const Field &f)
{
  const auto &g = f.grid();
  if (f.space() == Space::physical)
  {
    return g.cell_volume();
  }
  return g.freq_cell_volume() / std::pow(2.0 * std::numbers::pi, g.dim());
}

double l2_norm_sq(const Field &f)
{
  double acc = 0.0;
  for (auto z : f.values())
  {
    acc += std::norm(z);
  }
  return acc * quadrature_weight(f);
}

double l2_norm(const Field &f) { return std::sqrt(l2_norm_sq(f)); }

cplx inner(const Field &a, const Field &b)
{
  require_compatible(a, b, "inner product");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    acc += a[i] * std::conj(b[i]);
  }
  return acc * quadrature_weight(a);
}

double max_abs(const Field &f)
{
  double m = 0.0;
  for (auto z : f.values())
  {
    m = std::max(m, std::abs(z));
  }
  return m;
}

double distance(const Field &a, const Field &b) { return l2_norm(a - b); }

double boundary_mass_fraction(const Field &u, double width)
{
  require_space(u, Space::physical, "boundary_mass_fraction");
  const auto &g = u.grid();
  double total = 0.0, edge = 0.0;
  for (std::size_t c = 0; c < u.size(); ++c)
  {
    const double m = std::norm(u[c]);
    total += m;
    auto p = g.position(c);
    for (int a = 0; a < g.dim(); ++a)
    {
      if (std::abs(p[a]) >= g.half_width() - width)
      {
        edge += m;
        break;
      }
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

}  // namespace fracscat
