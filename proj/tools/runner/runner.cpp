// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "runner.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "experiments.hpp"
#include "fracscat/error.hpp"

#ifndef FRACSCAT_CODE_VERSION
#define FRACSCAT_CODE_VERSION "unknown"
#endif

namespace fracscat::runner
{

std::string format_number(double v)
{
  if (std::isnan(v))
  {
    return "nan";
  }
  if (std::isinf(v))
  {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

const char *code_version() { return FRACSCAT_CODE_VERSION; }

int classify_current_exception(std::string &kind, std::string &guard, std::string &message)
{
  try
  {
    throw;
  }
  catch (const GuardError &e)
  {
    kind = "guard";
    guard = e.guard();
    message = e.what();
    return exit_guard;
  }
  catch (const ConvergenceError &e)
  {
    kind = "convergence";
    message = e.what();
    return exit_convergence;
  }
  catch (const ValidationError &e)
  {
    kind = "validation";
    message = e.what();
    return exit_validation;
  }
  catch (const IoError &e)
  {
    kind = "io";
    message = e.what();
    return exit_io;
  }
  catch (const std::exception &e)
  {
    kind = "internal";
    message = e.what();
    return exit_internal;
  }
}

namespace
{

std::string csv_field(const std::string &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
  {
    return s;
  }
  std::string out = "\"";
  for (char c : s)
  {
    out += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return out + "\"";
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw IoError("cannot write " + path.string());
  }
  out << text;
  out.flush();
  if (!out)
  {
    throw IoError("write failed for " + path.string());
  }
}

struct Cell
{
  const ExperimentEntry *entry;
  double s;
};

}  // namespace

void write_csv(const std::filesystem::path &path, const std::vector<Row> &rows,
               const std::string &hash)
{
  std::string text = std::string(csv_header) + "\n";
  for (const auto &r : rows)
  {
    text += csv_field(r.experiment) + "," + csv_field(r.cell) + "," + csv_field(r.metric) + "," +
            format_number(r.value) + "," + csv_field(r.verdict) + "," + hash + "," +
            code_version() + "\n";
  }
  write_text(path, text);
}

void write_plot_script(const std::filesystem::path &path, const std::vector<Row> &rows)
{
  // one plot per (experiment, metric) that varies over more than one cell
  std::map<std::pair<std::string, std::string>, int> count;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto &r : rows)
  {
    const auto key = std::make_pair(r.experiment, r.metric);
    if (count[key]++ == 0)
    {
      order.push_back(key);
    }
  }
  std::string t;
  t += "# gnuplot script over results.csv\n";
  t += "# columns: " + std::string(csv_header) + "\n";
  t += "set datafile separator ','\n";
  t += "set terminal pngcairo size 900,600\n";
  t += "set logscale y\n";
  t += "set xlabel 'row within series'\n";
  int n = 0;
  for (const auto &key : order)
  {
    if (count[key] < 2)
    {
      continue;
    }
    const std::string name = key.first + "_" + key.second;
    t += "set output '" + name + ".png'\n";
    t += "set title '" + key.first + ": " + key.second + "'\n";
    t += "plot '< awk -F, \"NR>1 && $1==\\\"" + key.first + "\\\" && $3==\\\"" + key.second +
         "\\\"\" results.csv' using 0:(abs($4)) with linespoints title '" + key.second + "'\n";
    ++n;
  }
  if (n == 0)
  {
    t += "# no multi-point series\n";
  }
  write_text(path, t);
}

int run(const RunConfig &cfg, std::ostream &log)
{
  std::vector<Cell> cells;
  for (const auto &e : cfg.experiments)
  {
    for (double s : e.s)
    {
      cells.push_back({&e, s});
    }
  }
  const int nthreads = std::max(1, std::min<int>(effective_threads(cfg.threads), static_cast<int>(cells.size())));
  std::vector<CellResult> results(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&]
  {
    for (std::size_t i = next++; i < cells.size(); i = next++)
    {
      {
        std::lock_guard<std::mutex> lock(log_mutex);
        log << "[fracscat] " << cells[i].entry->id << " s=" << format_number(cells[i].s) << "\n";
      }
      try
      {
        results[i] = run_cell(*cells[i].entry, cells[i].s);
      }
      catch (...)
      {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t)
  {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &th : pool)
  {
    th.join();
  }

  // assembly in fixed cell order
  std::vector<Row> rows;
  nlohmann::json summary = {{"schema_version", schema_version},
                            {"code_version", code_version()},
                            {"config_hash", cfg.hash},
                            {"status", "ok"}};
  nlohmann::json exps = nlohmann::json::array();
  nlohmann::json guards = nlohmann::json::array();
  int code = exit_ok;
  for (std::size_t i = 0; i < cells.size(); ++i)
  {
    const auto &c = cells[i];
    if (exps.empty() || exps.back()["id"] != c.entry->id)
    {
      exps.push_back({{"id", c.entry->id}, {"experiment", c.entry->kind}, {"cells", nlohmann::json::array()}});
    }
    nlohmann::json cell = {{"s", c.s}};
    if (errors[i])
    {
      std::string kind, guard, message;
      try
      {
        std::rethrow_exception(errors[i]);
      }
      catch (...)
      {
        const int cc = classify_current_exception(kind, guard, message);
        code = code == exit_ok ? cc : code;
      }
      cell["error"] = {{"kind", kind}, {"message", message}};
      if (!guard.empty())
      {
        cell["error"]["guard"] = guard;
        guards.push_back(guard);
      }
      log << "[fracscat] " << c.entry->id << " s=" << format_number(c.s) << " failed: " << message << "\n";
    }
    else
    {
      cell["result"] = results[i].summary;
      rows.insert(rows.end(), results[i].rows.begin(), results[i].rows.end());
    }
    exps.back()["cells"].push_back(cell);
  }
  if (code != exit_ok)
  {
    summary["status"] = "error";
  }
  summary["guards_triggered"] = guards;
  summary["experiments"] = exps;
  summary["rows"] = rows.size();

  try
  {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec)
    {
      throw IoError("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());
    }
    write_csv(cfg.output_dir / "results.csv", rows, cfg.hash);
    write_text(cfg.output_dir / "summary.json", summary.dump(2) + "\n");
    write_plot_script(cfg.output_dir / "plot.gp", rows);
    write_text(cfg.output_dir / "config.resolved", cfg.resolved.dump(2) + "\n");
  }
  catch (const IoError &e)
  {
    log << "[fracscat] " << e.what() << "\n";
    return exit_io;
  }
  return code;
}

}  // namespace fracscat::runner
