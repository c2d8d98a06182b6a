// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_BATTERY_HPP
#define FRACSCAT_BATTERY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fracscat/field.hpp"
#include "fracscat/rng.hpp"

namespace fracscat
{

struct TestFunction
{
  std::string name;
  Field f;
};

// Six fixed functions used by the limiting-absorption sweeps: two Gaussians,
// a modulated Gaussian, an annular Fourier band around |xi| = 1, a smoothed
// indicator and a seeded random band-limited field.
std::vector<TestFunction> lap_battery(const GridSpec &grid, std::uint64_t seed = 7);

// Four smooth functions for the completeness identity.
std::vector<TestFunction> completeness_battery(const GridSpec &grid);

// Random physical field. kind 0: white noise times a Gaussian envelope of
// random width; kind 1: sum of random plane waves in an envelope; kind 2:
// sparse spikes.
Field random_field(const GridSpec &grid, Rng &rng, int kind);

}  // namespace fracscat

#endif  // FRACSCAT_BATTERY_HPP
