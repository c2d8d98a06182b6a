// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria (capped at 9). Tolerances live in `tol` below.
//
//   acceptance [--cli PATH] [--work DIR] [--only N[,N...]]

#include <sys/wait.h>

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fracscat/battery.hpp"
#include "fracscat/dyadic.hpp"
#include "fracscat/dynamics.hpp"
#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"
#include "fracscat/fredholm.hpp"
#include "fracscat/potential.hpp"
#include "fracscat/resolvent.hpp"
#include "fracscat/rng.hpp"
#include "fracscat/spectrum.hpp"

using namespace fracscat;
namespace fs = std::filesystem;

namespace tol
{
// 1: exact inequalities up to summation rounding
constexpr double norm_rounding = 1e-12;
constexpr double embedding_ratio = 2.0;
constexpr int battery_size = 200;
// 3
constexpr double cook_band = 0.2;
constexpr double drift_spread = 4.0;
constexpr int drift_min_blocks = 5;
constexpr double drift_growth_factor = 0.5;
// 4
constexpr double final_drift = 1e-3;
constexpr double isometry = 1e-6;
constexpr double intertwining_factor = 3.0;
constexpr double born_ratio = 4.0;
constexpr double born_rel = 0.10;
// 5
constexpr double l2_growth = 10.0;
constexpr double rho_b_variation = 2.0;
// 6
constexpr double stone_algebraic = 1e-12;
constexpr double stone_order_lo = 0.8;
constexpr double stone_order_hi = 1.2;
// 7
constexpr double dense_lambda = 1e-8;
constexpr double characterization = 1e-6;
constexpr double scan_lambda = 1e-4;
// 8
constexpr double completeness = 1e-2;
constexpr double completeness_free = 1e-6;
}  // namespace tol

namespace
{

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;
  std::string misses;

  void require(bool ok, const std::string &what)
  {
    if (!ok)
    {
      pass = false;
      misses += " [miss: " + what + "]";
    }
  }
};

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Context
{
  std::string cli;
  fs::path work;
};

// ---- 1 ---------------------------------------------------------------------

void space_axioms(Outcome &out, const Context &)
{
  GridSpec g(1, 256.0, 4096);
  DyadicLayout lay(g);
  Rng rng(2026);
  std::vector<Field> fields;
  for (int k = 0; k < tol::battery_size; ++k)
    fields.push_back(random_field(g, rng, k % 3));

  int chain = 0, duality = 0, embed = 0;
  double worst_embed = 0.0;
  const double s_list[] = {0.0, 0.5, 1.0, 2.0};
  for (std::size_t k = 0; k < fields.size(); ++k)
  {
    const Field &u = fields[k];
    const Field &v = fields[(k + 1) % fields.size()];
    const double l2 = l2_norm(u), bs = bstar_norm(u, lay), b = b_norm(u, lay);
    if (!(bs <= l2 * (1.0 + tol::norm_rounding) && l2 <= b * (1.0 + tol::norm_rounding)))
      ++chain;
    if (!(std::abs(inner(v, u)) <= bstar_norm(v, lay) * b * (1.0 + tol::norm_rounding)))
      ++duality;
    std::vector<double> n;
    for (double s : s_list)
      n.push_back(s == 0.0 ? bs : bsstar_norm(u, s, lay));
    for (std::size_t a = 0; a < n.size(); ++a)
      for (std::size_t c = a + 1; c < n.size(); ++c)
      {
        const double r = n[a] / n[c];
        worst_embed = std::max(worst_embed, r);
        if (!(r <= tol::embedding_ratio))
          ++embed;
      }
  }
  out.detail << "fields=" << fields.size() << " chain_violations=" << chain
             << " duality_violations=" << duality << " worst_embedding_ratio=" << fmt(worst_embed);
  out.require(chain == 0, "bstar <= L2 <= b");
  out.require(duality == 0, "duality");
  out.require(embed == 0, "embedding ratio <= 2");
}

// ---- 2 ---------------------------------------------------------------------

void shortrange_classifier(Outcome &out, const Context &)
{
  GridSpec g(1, 256.0, 4096);
  auto check = [&](const PotentialSpec &V, RangeVerdict want, const std::string &label)
  {
    const auto r = shortrange_series(V, g, 1.0);
    out.detail << label << "=" << to_string(r.verdict) << " ";
    out.require(r.verdict == want, label);
  };
  for (double gam : {2.0, 1.5, 1.2})
    check(PowerTail{1.0, gam}, RangeVerdict::short_range, "gamma" + fmt(gam));
  for (double gam : {1.0, 0.8})
    check(PowerTail{1.0, gam}, RangeVerdict::not_short_range, "gamma" + fmt(gam));
  check(AnnulusTail{1.0, EpsilonRule{1.0, 0.5}}, RangeVerdict::short_range, "eps=j^-1/2");
  check(AnnulusTail{1.0, EpsilonRule{1.0, 1.0}}, RangeVerdict::not_short_range, "eps=1/j");
}

// ---- 3 ---------------------------------------------------------------------

void cook_dichotomy(Outcome &out, const Context &)
{
  {
    GridSpec g(1, 512.0, 8192);
    const auto p = make_wave_packet(g, 1.0, 0.5, 1.5);
    const double t_max = std::min(256.0, time_horizon(p));
    for (auto [gam, want] : {std::pair{2.0, -2.0}, std::pair{1.0, -1.0}})
    {
      const auto c = cook_profile(p, evaluate(PotentialSpec(PowerTail{1.0, gam}), g), t_max);
      out.detail << "cook(gamma=" << fmt(gam) << ")=" << fmt(c.tail_exponent) << " ";
      out.require(std::abs(c.tail_exponent - want) <= tol::cook_band, "cook gamma " + fmt(gam));
    }
  }
  GridSpec g(1, 2048.0, 16384);
  const auto q = make_wave_packet(g, 0.9, 1.65, 2.14);
  const EpsilonRule zero{0.0, 1.0};
  const Field V = evaluate(PotentialSpec(AnnulusTail{1.0, zero}), g);
  const auto nr = nonexistence_drift(q, V, zero, 6, 12);
  const double need = tol::drift_growth_factor * nr.blocks.size() * nr.min_D;
  const double cum = nr.cumulative.empty() ? 0.0 : nr.cumulative.back();
  out.detail << "blocks=" << nr.blocks.size() << " spread=" << fmt(nr.spread)
             << " cumulative=" << fmt(cum) << " need=" << fmt(need);
  out.require(static_cast<int>(nr.blocks.size()) >= tol::drift_min_blocks, "block count");
  out.require(nr.spread < tol::drift_spread, "ratio spread");
  out.require(cum >= need, "cumulative growth");
}

// ---- 4 ---------------------------------------------------------------------

void wave_operators(Outcome &out, const Context &)
{
  GridSpec g(1, 512.0, 8192);
  struct Case
  {
    double s, a, b, x0, dt;
  };
  // Outgoing packets started to the right of the bump.
  const Case cases[] = {{0.5, 0.3, 1.5, 35.0, 0.02},
                        {1.0, 0.5, 1.5, 25.0, 0.02},
                        {2.0, 0.3, 1.3, 15.0, 0.02},
                        {3.0, 0.4, 1.0, 40.0, 0.01}};
  const std::vector<double> T{2, 4, 8, 16, 32, 64};
  for (const auto &c : cases)
  {
    PacketOptions po;
    po.center = {c.x0, 0.0, 0.0};
    const auto p = make_wave_packet(g, c.s, c.a, c.b, po);
    double born[2] = {0.0, 0.0};
    for (int h = 0; h < 2; ++h)
    {
      const Field V = evaluate(PotentialSpec(CompactBump{1.0, h == 0 ? 0.1 : 0.05}), g);
      const auto r = wave_operator_estimate(p, V, T, c.dt);
      born[h] = distance(r.snapshots.back(), born_approximation(p.u, V, c.s, T.back(), 4000));
      if (h != 0)
        continue;
      const double fd = r.drift.back();
      out.detail << "s=" << fmt(c.s) << "(drift=" << fmt(fd) << " iso=" << fmt(r.isometry_residual)
                 << " int=" << fmt(r.intertwining_residual);
      const std::string tag = " s=" + fmt(c.s);
      out.require(r.decreasing, "drift decreasing" + tag);
      out.require(fd < tol::final_drift, "final drift" + tag);
      out.require(r.isometry_residual < tol::isometry, "isometry" + tag);
      out.require(r.intertwining_residual < tol::intertwining_factor * fd, "intertwining" + tag);
    }
    const double ratio = born[0] / born[1];
    out.detail << " born=" << fmt(ratio) << ") ";
    out.require(std::abs(ratio / tol::born_ratio - 1.0) <= tol::born_rel, "born scaling s=" + fmt(c.s));
  }
}

// ---- 5 ---------------------------------------------------------------------

void limiting_absorption(Outcome &out, const Context &)
{
  GridSpec g(1, 8192.0, 65536);
  DyadicLayout lay(g);
  const auto battery = lap_battery(g);
  double worst_growth = 1e300, worst_var = 0.0;
  std::string growth_at, var_at;
  for (double s : {0.5, 1.0, 2.0, 3.0})
  {
    const auto sw = lap_sweep(s, {1.0}, battery, lay);
    out.require(sw.verdicts.size() == battery.size(), "verdict per function s=" + fmt(s));
    for (const auto &v : sw.verdicts)
    {
      const std::string tag = v.function + "@s=" + fmt(s);
      out.require(v.usable, "usable ladder " + tag);
      if (v.l2_growth < worst_growth)
      {
        worst_growth = v.l2_growth;
        growth_at = tag;
      }
      if (v.rho_B_variation > worst_var)
      {
        worst_var = v.rho_B_variation;
        var_at = tag;
      }
      if (!(v.l2_growth >= tol::l2_growth))
        out.require(false, "L2 growth " + fmt(v.l2_growth) + " " + tag);
      out.require(v.rho_B_variation <= tol::rho_b_variation, "rho_B variation " + tag);
    }
  }
  out.detail << "min_L2_growth=" << fmt(worst_growth) << " (" << growth_at << ") max_rhoB_variation="
             << fmt(worst_var) << " (" << var_at << ")";
}

// ---- 6 ---------------------------------------------------------------------

void stone_jump_check(Outcome &out, const Context &)
{
  double worst_alg = 0.0;
  {
    GridSpec g(1, 64.0, 1024);
    Rng rng(6);
    for (int k = 0; k < 6; ++k)
    {
      const Field f = random_field(g, rng, k % 3), h = random_field(g, rng, (k + 1) % 3);
      for (double s : {0.5, 1.0, 2.0, 3.0})
        for (double eps : {0.3, 0.03, 0.003})
          worst_alg = std::max(worst_alg, stone_jump(s, 1.0, eps, f, h).algebraic_residual);
    }
  }
  GridSpec g(1, 1024.0, 16384);
  const Field f = Field::from_function(g, [](const Point &x) { return cplx(std::exp(-0.5 * x[0] * x[0])); });
  std::vector<StoneResult> ladder;
  for (double eps : {0.1, 0.05, 0.025, 0.0125})
  {
    ladder.push_back(stone_jump(2.0, 1.0, eps, f, f));
    worst_alg = std::max(worst_alg, ladder.back().algebraic_residual);
  }
  // Oracle: f^(xi) = sqrt(2 pi) exp(-xi^2/2), shell points xi = +-1, s rho^{s-1} = 2.
  const double exact = (2.0 * 2.0 * std::numbers::pi * std::exp(-1.0) / 2.0) / (2.0 * std::numbers::pi);
  const double shell_err = std::abs(ladder[0].shell_value - exact);
  const auto fit = stone_order(ladder);
  out.detail << "max_algebraic=" << fmt(worst_alg) << " order=" << fmt(fit.slope)
             << " shell_value_error=" << fmt(shell_err);
  out.require(worst_alg < tol::stone_algebraic, "algebraic residual");
  out.require(shell_err < 1e-10, "shell value oracle");
  out.require(fit.slope >= tol::stone_order_lo && fit.slope <= tol::stone_order_hi, "order");
}

// ---- 7 ---------------------------------------------------------------------

// Dense H from the cosine kernel of |xi|^s on the periodic lattice.
double dense_ground_state(const Field &V, double s)
{
  const auto &g = V.grid();
  const int n = g.points();
  std::vector<double> kern(n, 0.0);
  for (int m = 0; m < n; ++m)
  {
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += std::pow(std::abs(g.frequency(k)), s) * std::cos(2.0 * std::numbers::pi * k * m / n);
    kern[m] = acc / n;
  }
  Eigen::MatrixXd H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      H(i, j) = kern[(i - j + n) % n] + (i == j ? V[i].real() : 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void eigen_suite(Outcome &out, const Context &)
{
  const double s = 2.0;
  GridSpec g(1, 64.0, 1024);
  const Field V = evaluate(PotentialSpec(GaussianWell{2.0, 1.0}), g);
  const auto run = eigen_solve(V, s, 10);
  out.require(!run.pairs.empty(), "bound state found");
  if (run.pairs.empty())
    return;
  const double dense = dense_ground_state(V, s);
  const double d_err = std::abs(run.pairs[0].lambda - dense);

  double worst_char = 0.0, worst_sat = 0.0;
  bool all_sat = true;
  for (const auto &p : run.pairs)
  {
    worst_char = std::max(worst_char, eigen_characterization_residual(p, V, s, 0.0).value());
    for (const auto &d : decay_profile(p, V, s, {0.1, 0.5}, {0.0, 1.0, s}))
    {
      worst_sat = std::max(worst_sat, d.saturation_ratio);
      all_sat = all_sat && d.saturated && d.saturation_ratio < decay_saturation_ratio;
    }
  }

  std::vector<double> lam;
  for (int i = 0; i <= 199; ++i)
    lam.push_back(-2.0 + 0.01 * i);
  const auto scan = lambda_scan(V, s, lam);
  double worst_scan = 0.0;
  const bool same_count = scan.candidates.size() == run.pairs.size();
  for (std::size_t k = 0; same_count && k < run.pairs.size(); ++k)
    worst_scan = std::max(worst_scan, std::abs(scan.candidates[k].lambda - run.pairs[k].lambda));

  out.detail << "pairs=" << run.pairs.size() << " lambda1=" << run.pairs[0].lambda
             << " dense_error=" << fmt(d_err) << " max_characterization=" << fmt(worst_char)
             << " max_saturation=" << fmt(worst_sat) << " scan_candidates=" << scan.candidates.size()
             << " max_scan_error=" << fmt(worst_scan);
  out.require(d_err < tol::dense_lambda, "dense oracle");
  out.require(worst_char < tol::characterization, "characterization");
  out.require(all_sat, "decay saturation");
  out.require(same_count, "scan candidate count");
  out.require(worst_scan < tol::scan_lambda, "scan agreement");
}

// ---- 8 ---------------------------------------------------------------------

void completeness(Outcome &out, const Context &)
{
  const double s = 2.0;
  GridSpec g(1, 1024.0, 16384);
  const auto battery = completeness_battery(g);
  out.require(battery.size() == 4, "4-function battery");
  struct Case
  {
    const char *name;
    PotentialSpec V;
    double tol;
  };
  const Case cases[] = {{"compact_bump", CompactBump{2.0, 0.5}, tol::completeness},
                        {"gaussian_well", GaussianWell{2.0, 1.0}, tol::completeness},
                        {"zero", PowerTail{0.0, 1.0}, tol::completeness_free}};
  for (const auto &c : cases)
  {
    const Field V = evaluate(c.V, g);
    std::vector<Field> ev;
    for (const auto &p : eigen_solve(V, s, 10).pairs)
      ev.push_back(p.u);
    const auto rep = completeness_1d(s, V, battery, ev);
    double worst = 0.0;
    for (const auto &r : rep.rows)
      worst = std::max(worst, r.relative_error);
    out.detail << c.name << "(bound=" << ev.size() << " max_err=" << fmt(worst) << ") ";
    out.require(!rep.rows.empty() && worst < c.tol, std::string(c.name));
  }
}

// ---- 9 ---------------------------------------------------------------------

std::string slurp(const fs::path &p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string &cli, const fs::path &config)
{
  const std::string cmd = cli + " run " + config.string() + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

void determinism(Outcome &out, const Context &ctx)
{
  if (ctx.cli.empty())
  {
    out.require(false, "--cli not given");
    return;
  }
  const fs::path dir = ctx.work / "determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string csv[2];
  for (int k = 0; k < 2; ++k)
  {
    const fs::path outdir = dir / ("run" + std::to_string(k));
    const fs::path cfg = dir / ("config" + std::to_string(k) + ".json");
    std::ofstream(cfg) << R"({
  "schema_version": 1,
  "output_dir": ")" << outdir.string()
                       << R"(",
  "experiments": [
    {"experiment": "shortrange", "grid": {"L": 128, "N": 1024},
     "potential": {"type": "power_tail", "gamma": 1.5}},
    {"experiment": "stone", "grid": {"L": 64, "N": 1024}},
    {"experiment": "eigen", "grid": {"L": 32, "N": 512},
     "potential": {"type": "gaussian_well", "depth": 2, "width": 1}}
  ]
})";
    const int code = run_cli(ctx.cli, cfg);
    out.require(code == 0, "cli exit " + std::to_string(code));
    csv[k] = slurp(outdir / "results.csv");
  }
  out.detail << "bytes=" << csv[0].size() << " identical=" << (csv[0] == csv[1] ? "yes" : "no");
  out.require(!csv[0].empty() && csv[0] == csv[1], "byte-identical results.csv");
}

}  // namespace

int main(int argc, char **argv)
{
  Context ctx;
  ctx.work = fs::temp_directory_path() / "fracscat_acceptance";
  std::set<int> only;
  for (int i = 1; i < argc; ++i)
  {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc)
      ctx.cli = argv[++i];
    else if (a == "--work" && i + 1 < argc)
      ctx.work = argv[++i];
    else if (a == "--only" && i + 1 < argc)
    {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ','))
        only.insert(std::stoi(tok));
    }
    else
    {
      std::fprintf(stderr, "usage: acceptance [--cli PATH] [--work DIR] [--only N,...]\n");
      return 64;
    }
  }
  fs::create_directories(ctx.work);

  using Check = std::function<void(Outcome &, const Context &)>;
  const std::pair<const char *, Check> criteria[] = {
    {"space axioms", space_axioms},
    {"short-range classifier", shortrange_classifier},
    {"cook dichotomy", cook_dichotomy},
    {"wave operators", wave_operators},
    {"limiting absorption", limiting_absorption},
    {"stone jump", stone_jump_check},
    {"eigen suite", eigen_suite},
    {"completeness", completeness},
    {"determinism", determinism},
  };

  int failed = 0;
  for (int n = 1; n <= 9; ++n)
  {
    if (!only.empty() && !only.count(n))
      continue;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try
    {
      criteria[n - 1].second(out, ctx);
    }
    catch (const std::exception &e)
    {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s  %s: %s%s  (%.1fs)\n", n, out.pass ? "PASS" : "FAIL",
                criteria[n - 1].first, out.detail.str().c_str(), out.misses.c_str(), secs);
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  return std::min(failed, 9);
}
