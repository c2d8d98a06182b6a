// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_KRYLOV_HPP
#define FRACSCAT_KRYLOV_HPP

#include <functional>
#include <span>

#include "fracscat/field.hpp"

namespace fracscat
{

// y = A x on raw coefficient vectors.
using LinearMap = std::function<void(std::span<const cplx> x, std::span<cplx> y)>;

struct KrylovOptions
{
  int restart = 60;
  int max_iterations = 3000;
  double tol = 1e-12;
};

struct KrylovResult
{
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Restarted GMRES with modified Gram-Schmidt. x holds the initial guess.
KrylovResult gmres(const LinearMap &A, std::span<const cplx> b, std::span<cplx> x,
                   const KrylovOptions &opt = {});

// Preconditioned conjugate gradients for Hermitian positive definite A;
// Minv applies the preconditioner.
KrylovResult pcg(const LinearMap &A, const LinearMap &Minv, std::span<const cplx> b,
                 std::span<cplx> x, const KrylovOptions &opt = {});

double euclidean_norm(std::span<const cplx> v);

}  // namespace fracscat

#endif  // FRACSCAT_KRYLOV_HPP
