// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACSCAT_RUNNER_CONFIG_HPP
#define FRACSCAT_RUNNER_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracscat/grid.hpp"
#include "fracscat/potential.hpp"

namespace fracscat::runner
{

using json = nlohmann::json;

inline constexpr int schema_version = 1;

struct ExperimentInfo
{
  std::string name;
  std::string summary;
  bool needs_potential;
};

const std::vector<ExperimentInfo> &experiment_catalog();

// One entry of the "experiments" array with every default filled in.
struct ExperimentEntry
{
  std::string id;
  std::string kind;
  GridSpec grid;
  std::vector<double> s;
  json potential;  // null when the experiment takes none
  json params;
};

struct RunConfig
{
  std::filesystem::path output_dir;
  int threads = 0;
  std::vector<ExperimentEntry> experiments;
  json resolved;
  std::string hash;  // FNV-1a of the resolved experiments array
};

// Throws ValidationError on any schema problem, IoError when unreadable.
RunConfig load_config(const std::filesystem::path &path);
RunConfig resolve_config(const json &raw);

std::uint64_t fnv1a(std::string_view text);
std::string hex64(std::uint64_t v);

PotentialSpec potential_from_json(const json &p);

// Worker count: FRACSCAT_THREADS beats the config value; 0 means hardware.
int effective_threads(int configured);

}  // namespace fracscat::runner

#endif
