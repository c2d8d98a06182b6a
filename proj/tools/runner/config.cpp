// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "fracscat/error.hpp"

namespace fracscat::runner
{

namespace
{

[[noreturn]] void fail(const std::string &where, const std::string &what)
{
  throw ValidationError("config " + where + ": " + what);
}

bool same_kind(const json &def, const json &val)
{
  if (def.is_number())
  {
    return val.is_number();
  }
  if (def.is_null())
  {
    return val.is_null() || val.is_number();
  }
  if (def.is_array())
  {
    if (!val.is_array())
    {
      return false;
    }
    for (const auto &x : val)
    {
      if (!x.is_number())
      {
        return false;
      }
    }
    return true;
  }
  return def.type() == val.type();
}

// Defaults overlaid by user values; unknown keys and type changes rejected.
json merge(const json &defaults, const json &user, const std::string &where)
{
  if (user.is_null())
  {
    return defaults;
  }
  if (!user.is_object())
  {
    fail(where, "expected an object");
  }
  json out = defaults;
  for (const auto &[k, v] : user.items())
  {
    if (!defaults.contains(k))
    {
      fail(where, "unknown key '" + k + "'");
    }
    if (defaults[k].is_object())
    {
      out[k] = merge(defaults[k], v, where + "." + k);
    }
    else if (!same_kind(defaults[k], v))
    {
      fail(where + "." + k, "wrong type");
    }
    else
    {
      out[k] = v;
    }
  }
  return out;
}

json packet_defaults(double r_min, double r_max)
{
  return {{"r_min", r_min}, {"r_max", r_max}, {"center", 0.0}, {"direction", 1.0}};
}

json param_defaults(const std::string &kind)
{
  if (kind == "shortrange")
  {
    return {{"delta_p", 0.1},         {"tail_threshold", -0.1}, {"long_threshold", -0.05},
            {"min_r_squared", 0.9},   {"min_points", 4},        {"stride_1d", 1},
            {"stride_nd", 4}};
  }
  if (kind == "cook")
  {
    json p = packet_defaults(0.5, 1.5);
    p.update({{"t_min", 1.0},
              {"t_max", 256.0},
              {"points_per_octave", 4},
              {"integrable_below", -1.1},
              {"nonintegrable_above", -0.95},
              {"clearance", 2.0}});
    return p;
  }
  if (kind == "waveop")
  {
    json p = packet_defaults(0.5, 1.5);
    p["center"] = 25.0;
    p.update({{"T", json::array({2.0, 4.0, 8.0, 16.0, 32.0, 64.0})},
              {"dt", 0.02},
              {"tol", 1e-3},
              {"ratio", 0.9},
              {"noise_floor", 1e-12},
              {"tau", 1.0},
              {"isometry_tol", 1e-6},
              {"intertwining_factor", 3.0},
              {"born_steps", 4000},
              {"born_tolerance", 0.1}});
    return p;
  }
  if (kind == "nonexistence")
  {
    json p = packet_defaults(1.65, 2.14);
    p.update({{"j_first", 6},
              {"j_last", 12},
              {"quad_points", 24},
              {"spread_max", 4.0},
              {"growth_factor", 0.5},
              {"min_blocks", 5}});
    return p;
  }
  if (kind == "lap")
  {
    return {{"lambda", json::array({1.0})}, {"eps_start", 0.1},      {"points_per_decade", 2},
            {"bounded_factor", 2.0},        {"growth_factor", 10.0}, {"seed", 7}};
  }
  if (kind == "weighted_lap")
  {
    return {{"lambda", 1.0},
            {"eps", json::array({1e-1, 3e-2, 1e-2, 3e-3})},
            {"delta", json::array({0.5, 0.1, 0.02, 0.004})},
            {"variation_max", 2.0},
            {"growth_min", 2.0}};
  }
  if (kind == "stone")
  {
    return {{"lambda", 1.0},
            {"eps", json::array({0.1, 0.05, 0.025, 0.0125})},
            {"algebraic_tol", 1e-12},
            {"order_min", 0.8},
            {"order_max", 1.2}};
  }
  if (kind == "eigen")
  {
    return {{"count", 10},
            {"window_lo", nullptr},
            {"window_hi", 0.0},
            {"tol", 1e-8},
            {"cluster_tol", 1e-6},
            {"seed", 12345},
            {"max_iterations", 400},
            {"dense_check", true},
            {"dense_tol", 1e-8},
            {"characterization_tol", 1e-6},
            {"scan_lo", -2.0},
            {"scan_hi", -0.01},
            {"scan_points", 200},
            {"scan_threshold_factor", 1e-3},
            {"scan_match_tol", 1e-4}};
  }
  if (kind == "decay")
  {
    return {{"count", 10},
            {"eps", json::array({0.1, 0.5})},
            {"s_prime", json::array({0.0, 1.0})},
            {"include_s", true},
            {"seed", 12345}};
  }
  if (kind == "completeness")
  {
    return {{"rho_max", 10.0}, {"eps_multiple", 4.0}, {"tol", 1e-2},
            {"zero_tol", 1e-6}, {"eigen_count", 10},  {"seed", 12345}};
  }
  fail("experiment", "unknown experiment '" + kind + "'");
}

json potential_defaults(const std::string &type)
{
  if (type == "power_tail")
  {
    return {{"type", type}, {"kappa", 1.0}, {"gamma", 2.0}};
  }
  if (type == "annulus_tail")
  {
    return {{"type", type}, {"kappa", 1.0}, {"eps_scale", 0.0}, {"eps_power", 0.0}};
  }
  if (type == "gaussian_well")
  {
    return {{"type", type}, {"depth", 1.0}, {"width", 1.0}};
  }
  if (type == "compact_bump")
  {
    return {{"type", type}, {"radius", 1.0}, {"height", 1.0}};
  }
  if (type == "zero")
  {
    return {{"type", type}};
  }
  fail("potential.type", "unknown potential type '" + type + "'");
}

json resolve_potential(const json &p, const std::string &where)
{
  if (!p.is_object() || !p.contains("type") || !p["type"].is_string())
  {
    fail(where, "potential needs a string 'type'");
  }
  return merge(potential_defaults(p["type"].get<std::string>()), p, where);
}

void require_positive(const json &params, const std::string &key, const std::string &where)
{
  if (!(params[key].get<double>() > 0.0))
  {
    fail(where + "." + key, "must be positive");
  }
}

void check_params(const std::string &kind, const json &p, const std::string &where)
{
  auto pos = [&](const char *k) { require_positive(p, k, where); };
  auto positive_list = [&](const char *k)
  {
    if (p[k].empty())
    {
      fail(where + "." + k, "must not be empty");
    }
    for (const auto &x : p[k])
    {
      if (!(x.get<double>() > 0.0))
      {
        fail(where + "." + k, "entries must be positive");
      }
    }
  };
  if (kind == "cook" || kind == "waveop" || kind == "nonexistence")
  {
    pos("r_min");
    pos("r_max");
  }
  if (kind == "cook")
  {
    pos("t_min");
    pos("t_max");
    pos("points_per_octave");
  }
  if (kind == "waveop")
  {
    positive_list("T");
    pos("dt");
    pos("tol");
  }
  if (kind == "lap")
  {
    if (p["lambda"].empty())
    {
      fail(where + ".lambda", "must not be empty");
    }
    pos("eps_start");
    pos("points_per_decade");
  }
  if (kind == "weighted_lap")
  {
    pos("lambda");
    positive_list("eps");
    positive_list("delta");
  }
  if (kind == "stone")
  {
    pos("lambda");
    positive_list("eps");
  }
  if (kind == "eigen" || kind == "decay")
  {
    pos("count");
  }
  if (kind == "eigen" && p["scan_points"].get<int>() != 0 && p["scan_points"].get<int>() < 3)
  {
    fail(where + ".scan_points", "must be 0 or at least 3");
  }
  if (kind == "decay")
  {
    positive_list("eps");
  }
}

}  // namespace

const std::vector<ExperimentInfo> &experiment_catalog()
{
  static const std::vector<ExperimentInfo> cat = {
    {"shortrange", "dyadic series sum R_j M_j and the short-range verdict", true},
    {"cook", "Cook integrand ||V e^{-itH0} u|| and its tail exponent", true},
    {"waveop", "wave operator Cauchy drift, isometry, intertwining, Born scaling", true},
    {"nonexistence", "per-block drift D_j at the sharp decay threshold", true},
    {"lap", "limiting absorption sweep: rho_B against rho_L2 over an eps ladder", false},
    {"weighted_lap", "weighted B/B* ratios for a trace-free source", false},
    {"stone", "Stone jump identity and its shell limit", false},
    {"eigen", "bound states, characterization residual, lambda scan", true},
    {"decay", "weighted decay profiles of bound states", true},
    {"completeness", "distorted Fourier completeness identity (1-D)", false},
  };
  return cat;
}

std::uint64_t fnv1a(std::string_view text)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text)
  {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v)
{
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

PotentialSpec potential_from_json(const json &p)
{
  const auto type = p.at("type").get<std::string>();
  if (type == "power_tail")
  {
    return PowerTail{p["kappa"].get<double>(), p["gamma"].get<double>()};
  }
  if (type == "annulus_tail")
  {
    return AnnulusTail{p["kappa"].get<double>(),
                       EpsilonRule{p["eps_scale"].get<double>(), p["eps_power"].get<double>()}};
  }
  if (type == "gaussian_well")
  {
    return GaussianWell{p["depth"].get<double>(), p["width"].get<double>()};
  }
  if (type == "compact_bump")
  {
    return CompactBump{p["radius"].get<double>(), p["height"].get<double>()};
  }
  if (type == "zero")
  {
    return PowerTail{0.0, 1.0};
  }
  throw ValidationError("unknown potential type '" + type + "'");
}

RunConfig resolve_config(const json &raw)
{
  if (!raw.is_object())
  {
    fail("root", "expected an object");
  }
  for (const auto &[k, v] : raw.items())
  {
    if (k != "schema_version" && k != "output_dir" && k != "threads" && k != "experiments")
    {
      fail("root", "unknown key '" + k + "'");
    }
  }
  if (!raw.contains("schema_version") || !raw["schema_version"].is_number_integer() ||
      raw["schema_version"].get<int>() != schema_version)
  {
    fail("schema_version", "must be " + std::to_string(schema_version));
  }
  if (!raw.contains("experiments") || !raw["experiments"].is_array() ||
      raw["experiments"].empty())
  {
    fail("experiments", "must be a non-empty array");
  }
  RunConfig cfg;
  cfg.output_dir = raw.value("output_dir", std::string("fracscat-out"));
  if (raw.contains("threads") && !raw["threads"].is_number_integer())
  {
    fail("threads", "must be an integer");
  }
  cfg.threads = raw.value("threads", 0);
  if (cfg.threads < 0)
  {
    fail("threads", "must be >= 0");
  }

  json resolved_list = json::array();
  int index = 0;
  for (const auto &e : raw["experiments"])
  {
    const std::string where = "experiments[" + std::to_string(index) + "]";
    if (!e.is_object() || !e.contains("experiment") || !e["experiment"].is_string())
    {
      fail(where, "needs a string 'experiment'");
    }
    const auto kind = e["experiment"].get<std::string>();
    const ExperimentInfo *info = nullptr;
    for (const auto &c : experiment_catalog())
    {
      info = c.name == kind ? &c : info;
    }
    if (!info)
    {
      fail(where, "unknown experiment '" + kind + "'");
    }
    json base = {{"experiment", kind},
                 {"id", kind + "-" + std::to_string(index)},
                 {"grid", {{"dim", 1}, {"L", 256.0}, {"N", 4096}}},
                 {"s", json::array({1.0})},
                 {"params", param_defaults(kind)}};
    if (info->needs_potential || kind == "completeness")
    {
      base["potential"] = {{"type", "zero"}};
    }
    json user = e;
    json pot;
    if (user.contains("potential"))
    {
      if (!base.contains("potential"))
      {
        fail(where, "experiment '" + kind + "' takes no potential");
      }
      pot = resolve_potential(user["potential"], where + ".potential");
      user.erase("potential");
    }
    else if (info->needs_potential)
    {
      fail(where, "experiment '" + kind + "' needs a potential");
    }
    else if (base.contains("potential"))
    {
      pot = base["potential"];
    }
    json r = merge(base, user, where);
    if (!pot.is_null())
    {
      r["potential"] = pot;
    }
    if (!r["id"].is_string() || r["id"].get<std::string>().empty())
    {
      fail(where + ".id", "must be a non-empty string");
    }
    if (r["s"].empty())
    {
      fail(where + ".s", "must not be empty");
    }
    for (const auto &x : r["s"])
    {
      if (!(x.get<double>() > 0.0))
      {
        fail(where + ".s", "entries must be positive");
      }
    }
    const auto &gj = r["grid"];
    if (!gj["dim"].is_number_integer() || !gj["N"].is_number_integer())
    {
      fail(where + ".grid", "dim and N must be integers");
    }
    ExperimentEntry entry{r["id"].get<std::string>(), kind,
                          GridSpec(gj["dim"].get<int>(), gj["L"].get<double>(), gj["N"].get<int>()),
                          r["s"].get<std::vector<double>>(), pot, r["params"]};
    check_params(kind, entry.params, where + ".params");
    for (const auto &other : cfg.experiments)
    {
      if (other.id == entry.id)
      {
        fail(where + ".id", "duplicate id '" + entry.id + "'");
      }
    }
    cfg.experiments.push_back(std::move(entry));
    resolved_list.push_back(r);
    ++index;
  }
  cfg.resolved = {{"schema_version", schema_version},
                  {"output_dir", cfg.output_dir.string()},
                  {"threads", cfg.threads},
                  {"experiments", resolved_list}};
  cfg.hash = hex64(fnv1a(resolved_list.dump()));
  return cfg;
}

RunConfig load_config(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot read config " + path.string());
  }
  json raw;
  try
  {
    raw = json::parse(in);
  }
  catch (const json::parse_error &e)
  {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  return resolve_config(raw);
}

int effective_threads(int configured)
{
  int n = configured;
  if (const char *env = std::getenv("FRACSCAT_THREADS"))
  {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0)
    {
      throw ValidationError("FRACSCAT_THREADS must be a non-negative integer");
    }
    n = static_cast<int>(v);
  }
  if (n == 0)
  {
    n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  return n;
}

}  // namespace fracscat::runner
