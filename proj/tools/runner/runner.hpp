// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_RUNNER_RUNNER_HPP
#define FRACSCAT_RUNNER_RUNNER_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "records.hpp"

namespace fracscat::runner
{

enum ExitCode : int
{
  exit_ok = 0,
  exit_internal = 1,
  exit_validation = 2,
  exit_guard = 3,
  exit_convergence = 4,
  exit_io = 5
};

const char *code_version();

// Exit code for the exception currently being handled; fills kind/guard/message.
int classify_current_exception(std::string &kind, std::string &guard, std::string &message);

void write_csv(const std::filesystem::path &path, const std::vector<Row> &rows,
               const std::string &hash);
void write_plot_script(const std::filesystem::path &path, const std::vector<Row> &rows);

// Runs every cell, writes the four output files into cfg.output_dir.
int run(const RunConfig &cfg, std::ostream &log);

}  // namespace fracscat::runner

#endif
