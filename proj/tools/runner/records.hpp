// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_RUNNER_RECORDS_HPP
#define FRACSCAT_RUNNER_RECORDS_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fracscat::runner
{

struct Row
{
  std::string experiment;
  std::string cell;
  std::string metric;
  double value = 0.0;
  std::string verdict;
};

// Output of one sweep cell (one experiment entry at one s).
struct CellResult
{
  std::vector<Row> rows;
  nlohmann::json summary = nlohmann::json::object();
};

inline constexpr const char *csv_header =
  "experiment,cell,metric,value,verdict,config_hash,code_version";

// Shortest round-trip decimal; nan, inf, -inf spelled out.
std::string format_number(double v);

}  // namespace fracscat::runner

#endif
