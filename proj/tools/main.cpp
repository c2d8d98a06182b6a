// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include <CLI11.hpp>

#include "runner/config.hpp"
#include "runner/runner.hpp"

using namespace fracscat::runner;

int main(int argc, char **argv)
{
  CLI::App app{"fracscat: scattering experiments for (-Delta)^{s/2} + V on periodic grids"};
  app.set_version_flag("--version", std::string(code_version()));
  app.require_subcommand(1);

  std::string config_path, output_dir;
  int threads = -1;
  auto *run_cmd = app.add_subcommand("run", "run every experiment of a config file");
  run_cmd->add_option("config", config_path, "JSON config")->required();
  run_cmd->add_option("-o,--output", output_dir, "output directory (overrides output_dir)");
  run_cmd->add_option("-j,--threads", threads, "worker threads (FRACSCAT_THREADS wins)");

  std::string validate_path;
  auto *val_cmd = app.add_subcommand("validate", "check a config and print it with defaults filled in");
  val_cmd->add_option("config", validate_path, "JSON config")->required();

  auto *list_cmd = app.add_subcommand("list-experiments", "print the experiment names");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::CallForVersion &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return exit_validation;
  }

  try
  {
    if (*list_cmd)
    {
      for (const auto &info : experiment_catalog())
      {
        std::cout << info.name << "\t" << info.summary << "\n";
      }
      return exit_ok;
    }
    if (*val_cmd)
    {
      const auto cfg = load_config(validate_path);
      std::cout << cfg.resolved.dump(2) << "\n";
      std::cerr << "config ok, hash " << cfg.hash << "\n";
      return exit_ok;
    }
    auto cfg = load_config(config_path);
    if (!output_dir.empty())
    {
      cfg.output_dir = output_dir;
    }
    if (threads >= 0)
    {
      cfg.threads = threads;
    }
    return run(cfg, std::cerr);
  }
  catch (...)
  {
    std::string kind, guard, message;
    const int code = classify_current_exception(kind, guard, message);
    std::cerr << "fracscat: " << kind << " error: " << message << "\n";
    return code;
  }
}
