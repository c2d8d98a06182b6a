// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_FOURIER_HPP
#define FRACSCAT_FOURIER_HPP

#include "fracscat/field.hpp"

namespace fracscat
{

// Discrete approximation of  u^(xi) = \int e^{-i x.xi} u(x) dx  on the grid.
Field forward_transform(const Field &u);

// Inverse of forward_transform; u(x) = (2pi)^{-d} \int e^{i x.xi} u^(xi) dxi.
Field inverse_transform(const Field &uhat);

// Exact discrete-time Fourier transform of a physical field at an arbitrary
// frequency: h^d sum_n u(x_n) e^{-i xi.x_n}.
cplx dtft(const Field &u, const Point &xi);

namespace detail
{
// Unnormalized in-place DFT of a row-major d-dimensional array of side n.
// sign = -1 forward, +1 backward. Plans are cached and thread-safe.
void fft_inplace(int dim, int n, cplx *data, int sign);
}  // namespace detail

}  // namespace fracscat

#endif  // FRACSCAT_FOURIER_HPP
