// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_RNG_HPP
#define FRACSCAT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace fracscat
{

// Portable stream: mt19937_64 is fully specified by the standard, but the
// std distributions are not, so the conversions are done here.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Standard normal by Box-Muller (one value per call, the pair is not cached).
  double normal()
  {
    double u1 = uniform();
    while (u1 <= 0.0)
    {
      u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

private:
  std::mt19937_64 eng_;
};

}  // namespace fracscat

#endif  // FRACSCAT_RNG_HPP
