// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_RUNNER_EXPERIMENTS_HPP
#define FRACSCAT_RUNNER_EXPERIMENTS_HPP

#include "config.hpp"
#include "records.hpp"

namespace fracscat::runner
{

CellResult run_cell(const ExperimentEntry &e, double s);

}  // namespace fracscat::runner

#endif
