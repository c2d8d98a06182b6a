// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_ERROR_HPP
#define FRACSCAT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fracscat
{

// Base of every library exception.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Bad argument or configuration; maps to exit code 2.
class ValidationError : public Error
{
public:
  using Error::Error;
};

// Operation applied to a field in the wrong space (physical vs Fourier).
class TagError : public ValidationError
{
public:
  using ValidationError::ValidationError;
};

// Two fields on different grids.
class GridMismatchError : public ValidationError
{
public:
  using ValidationError::ValidationError;
};

// Mathematical precondition violated, e.g. |j-k| <= 1 for off-diagonal blocks.
class DomainError : public ValidationError
{
public:
  using ValidationError::ValidationError;
};

// Numerical guard tripped: torus wrap, shell beyond Nyquist, step size.
// Maps to exit code 3.
class GuardError : public Error
{
public:
  GuardError(std::string guard, const std::string &what)
    : Error(guard + ": " + what), guard_(std::move(guard))
  {
  }
  const std::string &guard() const noexcept { return guard_; }

private:
  std::string guard_;
};

// Iterative solver exhausted its budget. Maps to exit code 4.
class ConvergenceError : public Error
{
public:
  ConvergenceError(const std::string &what, int iterations, double residual)
    : Error(what), iterations_(iterations), residual_(residual)
  {
  }
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

private:
  int iterations_;
  double residual_;
};

// Filesystem or serialization failure. Maps to exit code 5.
class IoError : public Error
{
public:
  using Error::Error;
};

}  // namespace fracscat

#endif  // FRACSCAT_ERROR_HPP
