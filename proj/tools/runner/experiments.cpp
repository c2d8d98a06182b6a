// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracscat/battery.hpp"
#include "fracscat/dynamics.hpp"
#include "fracscat/error.hpp"
#include "fracscat/fredholm.hpp"
#include "fracscat/resolvent.hpp"
#include "fracscat/spectrum.hpp"

namespace fracscat::runner
{

namespace
{

class Sink
{
public:
  Sink(const ExperimentEntry &e, double s) : id_(e.id), base_("s=" + format_number(s)) {}

  void add(const std::string &tag, const std::string &metric, double value,
           const std::string &verdict = "")
  {
    out.rows.push_back({id_, tag.empty() ? base_ : base_ + ";" + tag, metric, value, verdict});
  }

  CellResult out;

private:
  std::string id_, base_;
};

std::string kv(const std::string &k, double v) { return k + "=" + format_number(v); }

const char *pass_fail(bool ok) { return ok ? "pass" : "fail"; }

double num(const json &p, const char *k) { return p.at(k).get<double>(); }
int integer(const json &p, const char *k) { return static_cast<int>(std::lround(p.at(k).get<double>())); }
std::vector<double> list(const json &p, const char *k) { return p.at(k).get<std::vector<double>>(); }

json thresholds(std::initializer_list<std::pair<const char *, double>> items)
{
  json t = json::object();
  for (const auto &[k, v] : items)
  {
    t[k] = v;
  }
  return t;
}

WavePacket packet(const ExperimentEntry &e, double s)
{
  const auto &p = e.params;
  PacketOptions po;
  po.center = {num(p, "center"), 0.0, 0.0};
  po.direction = {num(p, "direction"), 0.0, 0.0};
  return make_wave_packet(e.grid, s, num(p, "r_min"), num(p, "r_max"), po);
}

void packet_rows(Sink &k, const WavePacket &w)
{
  k.add("", "packet_v_min", w.v_min);
  k.add("", "packet_v_max", w.v_max);
  k.add("", "packet_width", w.width);
  k.add("", "packet_leakage", w.leakage);
  k.add("", "time_horizon", time_horizon(w));
}

CellResult shortrange(const ExperimentEntry &e, double s)
{
  Sink k(e, s);
  const auto &p = e.params;
  ShortRangeOptions opt;
  opt.delta_p = num(p, "delta_p");
  opt.tail_threshold = num(p, "tail_threshold");
  opt.long_threshold = num(p, "long_threshold");
  opt.min_r_squared = num(p, "min_r_squared");
  opt.min_points = integer(p, "min_points");
  opt.stride_1d = integer(p, "stride_1d");
  opt.stride_nd = integer(p, "stride_nd");
  const auto rep = shortrange_series(potential_from_json(e.potential), e.grid, s, opt);
  for (std::size_t i = 0; i < rep.j.size(); ++i)
  {
    const std::string tag = "j=" + std::to_string(rep.j[i]);
    k.add(tag, "M_j", rep.M[i]);
    k.add(tag, "R_jM_j", rep.RM[i]);
    k.add(tag, "S_J", rep.partial_sums[i]);
  }
  const std::string verdict = to_string(rep.verdict);
  k.add("", "p", rep.p);
  k.add("", "tail_exponent", rep.tail_exponent, verdict);
  k.add("", "fit_r_squared", rep.fit.r_squared);
  k.add("", "fit_first_j", rep.fit_first_j);
  k.out.summary = {{"verdict", verdict},
                   {"tail_exponent", rep.tail_exponent},
                   {"truncated", rep.truncated},
                   {"thresholds", thresholds({{"tail_threshold", opt.tail_threshold},
                                              {"long_threshold", opt.long_threshold},
                                              {"min_r_squared", opt.min_r_squared},
                                              {"min_points", opt.min_points}})}};
  return k.out;
}

CellResult cook(const ExperimentEntry &e, double s)
{
  Sink k(e, s);
  const auto &p = e.params;
  const auto w = packet(e, s);
  packet_rows(k, w);
  CookOptions opt;
  opt.t_min = num(p, "t_min");
  opt.points_per_octave = integer(p, "points_per_octave");
  opt.integrable_below = num(p, "integrable_below");
  opt.nonintegrable_above = num(p, "nonintegrable_above");
  opt.clearance = num(p, "clearance");
  const Field V = evaluate(potential_from_json(e.potential), e.grid);
  const auto prof = cook_profile(w, V, num(p, "t_max"), opt);
  for (std::size_t i = 0; i < prof.t.size(); ++i)
  {
    k.add(kv("t", prof.t[i]), "g", prof.g[i]);
    k.add(kv("t", prof.t[i]), "cumulative", prof.cumulative[i]);
  }
  k.add("", "fit_from", prof.fit_from);
  k.add("", "tail_exponent", prof.tail_exponent, prof.verdict);
  k.add("", "fit_r_squared", prof.fit.r_squared);
  k.out.summary = {{"verdict", prof.verdict},
                   {"tail_exponent", prof.tail_exponent},
                   {"thresholds", thresholds({{"integrable_below", opt.integrable_below},
                                              {"nonintegrable_above", opt.nonintegrable_above},
                                              {"clearance", opt.clearance}})}};
  return k.out;
}

CellResult waveop(const ExperimentEntry &e, double s)
{
  Sink k(e, s);
  const auto &p = e.params;
  const auto w = packet(e, s);
  packet_rows(k, w);
  WaveOpOptions opt;
  opt.tol = num(p, "tol");
  opt.ratio = num(p, "ratio");
  opt.noise_floor = num(p, "noise_floor");
  opt.tau = num(p, "tau");
  const auto T = list(p, "T");
  const double dt = num(p, "dt");
  const Field V = evaluate(potential_from_json(e.potential), e.grid);
  const auto rec = wave_operator_estimate(w, V, T, dt, opt);
  for (std::size_t i = 0; i < rec.T.size(); ++i)
  {
    k.add(kv("T", rec.T[i]), "isometry", rec.isometry[i]);
    if (i > 0)
    {
      k.add(kv("T", rec.T[i]), "drift", rec.drift[i - 1]);
    }
  }
  const double final_drift = rec.drift.empty() ? 0.0 : rec.drift.back();
  const double iso_tol = num(p, "isometry_tol");
  const double ifac = num(p, "intertwining_factor");
  const bool iso_ok = rec.isometry_residual < iso_tol;
  const bool int_ok = rec.intertwining_residual < ifac * std::max(final_drift, opt.noise_floor);
  k.add("", "final_drift", final_drift, rec.verdict);
  k.add("", "isometry_residual", rec.isometry_residual, pass_fail(iso_ok));
  k.add("", "intertwining_residual", rec.intertwining_residual, pass_fail(int_ok));
  json summary = {{"verdict", rec.verdict},
                  {"final_drift", final_drift},
                  {"drift_decreasing", rec.decreasing},
                  {"isometry", pass_fail(iso_ok)},
                  {"intertwining", pass_fail(int_ok)}};
  const int steps = integer(p, "born_steps");
  const double btol = num(p, "born_tolerance");
  if (steps > 0)
  {
    // Born error at the potential and at half of it; quadratic scaling means a ratio of 4.
    const Field half = 0.5 * V;
    const auto rec_half = wave_operator_estimate(w, half, {T.back()}, dt, opt);
    const double e1 = distance(rec.snapshots.back(), born_approximation(w.u, V, s, T.back(), steps));
    const double e2 =
      distance(rec_half.snapshots.back(), born_approximation(w.u, half, s, T.back(), steps));
    const double ratio = e1 / e2;
    const bool ok = std::abs(ratio / 4.0 - 1.0) <= btol;
    k.add("", "born_error", e1);
    k.add("", "born_error_half", e2);
    k.add("", "born_ratio", ratio, ok ? "quadratic" : "not_quadratic");
    summary["born_ratio"] = ratio;
    summary["born"] = ok ? "quadratic" : "not_quadratic";
  }
  summary["thresholds"] = thresholds({{"tol", opt.tol},
                                      {"ratio", opt.ratio},
                                      {"noise_floor", opt.noise_floor},
                                      {"isometry_tol", iso_tol},
                                      {"intertwining_factor", ifac},
                                      {"born_tolerance", btol}});
  k.out.summary = summary;
  return k.out;
}

CellResult nonexistence(const ExperimentEntry &e, double s)
{
  Sink k(e, s);
  const auto &p = e.params;
  if (e.potential.at("type") != "annulus_tail")
  {
    throw ValidationError("nonexistence needs an annulus_tail potential");
  }
  const auto w = packet(e, s);
  packet_rows(k, w);
  const EpsilonRule rule{num(e.potential, "eps_scale"), num(e.potential, "eps_power")};
  const Field V = evaluate(potential_from_json(e.potential), e.grid);
  const auto r = nonexistence_drift(w, V, rule, integer(p, "j_first"), integer(p, "j_last"),
                                    integer(p, "quad_points"));
  for (std::size_t i = 0; i < r.blocks.size(); ++i)
  {
    const std::string tag = "j=" + std::to_string(r.blocks[i]);
    k.add(tag, "D_j", r.D[i]);
    k.add(tag, "P_j", r.P[i]);
    k.add(tag, "ratio", r.ratio[i]);
    k.add(tag, "cumulative", r.cumulative[i]);
  }
  const double spread_max = num(p, "spread_max");
  const double gf = num(p, "growth_factor");
  const int min_blocks = integer(p, "min_blocks");
  const double n = static_cast<double>(r.blocks.size());
  const bool enough = static_cast<int>(r.blocks.size()) >= min_blocks;
  const bool spread_ok = enough && r.spread < spread_max;
  const double need = gf * n * r.min_D;
  const bool growing = enough && !r.cumulative.empty() && r.cumulative.back() >= need;
  k.add("", "spread", r.spread, spread_ok ? "comparable" : "not_comparable");
  k.add("", "cumulative_drift", r.cumulative.empty() ? 0.0 : r.cumulative.back(),
        growing ? "growing" : "not_growing");
  k.add("", "growth_bound", need);
  k.out.summary = {{"spread", r.spread},
                   {"spread_verdict", spread_ok ? "comparable" : "not_comparable"},
                   {"cumulative_drift", r.cumulative.empty() ? 0.0 : r.cumulative.back()},
                   {"verdict", growing ? "growing" : "not_growing"},
                   {"thresholds", thresholds({{"spread_max", spread_max},
                                              {"growth_factor", gf},
                                              {"min_blocks", min_blocks}})}};
  return k.out;
}

CellResult lap(const ExperimentEntry &e, double s)
{
  Sink k(e, s);
  const auto &p = e.params;
  LapOptions opt;
  opt.eps_start = num(p, "eps_start");
  opt.points_per_decade = integer(p, "points_per_decade");
  opt.bounded_factor = num(p, "bounded_factor");
  opt.growth_factor = num(p, "growth_factor");
  const DyadicLayout layout(e.grid);
  const auto battery = lap_battery(e.grid, static_cast<std::uint64_t>(integer(p, "seed")));
  const auto sw = lap_sweep(s, list(p, "lambda"), battery, layout, opt);
  for (std::size_t i = 0; i < sw.lambdas.size(); ++i)
  {
    k.add(kv("lambda", sw.lambdas[i]), "eps_floor", sw.eps_floor[i]);
  }
  for (const auto &r : sw.rows)
  {
    const std::string tag = kv("lambda", r.lambda) + ";f=" + r.function + ";" + kv("eps", r.eps);
    k.add(tag, "rho_B", r.rho_B);
    k.add(tag, "rho_L2", r.rho_L2);
  }
  bool all_bounded = true, all_blowup = true;
  json per = json::array();
  for (const auto &v : sw.verdicts)
  {
    const std::string tag = kv("lambda", v.lambda) + ";f=" + v.function;
    const char *bv = !v.usable ? "unusable" : v.bounded ? "bounded" : "unbounded";
    const char *gv = !v.usable ? "unusable" : v.l2_blowup ? "blowup" : "no_blowup";
    k.add(tag, "rho_B_variation", v.rho_B_variation, bv);
    k.add(tag, "l2_growth", v.l2_growth, gv);
    all_bounded = all_bounded && v.usable && v.bounded;
    all_blowup = all_blowup && v.usable && v.l2_blowup;
    per.push_back({{"lambda", v.lambda},
                   {"function", v.function},
                   {"rho_B_variation", v.rho_B_variation},
                   {"l2_growth", v.l2_growth},
                   {"bounded", bv},
                   {"l2", gv}});
  }
  const bool contrast = all_bounded && all_blowup;
  k.add("", "contrast", contrast ? 1.0 : 0.0, contrast ? "contrast" : "no_contrast");
  k.out.summary = {{"verdict", contrast ? "contrast" : "no_contrast"},
                   {"all_bounded", all_bounded},
                   {"all_l2_blowup", all_blowup},
                   {"functions", per},
                   {"thresholds", thresholds({{"bounded_factor", opt.bounded_factor},
                                              {"growth_factor", opt.growth_factor},
                                              {"eps_start", opt.eps_start},
                                              {"points_per_decade", opt.points_per_decade}})}};
  return k.out;
}

CellResult weighted_lap(const ExperimentEntry &e, double s)
{
  Sink k(e, s);
  const auto &p = e.params;
  const double lambda = num(p, "lambda");
  const DyadicLayout layout(e.grid);
  const Field g = weighted_lap_source(e.grid, s, lambda);
  const auto r = weighted_lap_check(s, lambda, list(p, "eps"), list(p, "delta"), g, layout);
  if (r.skipped)
  {
    k.add("", "skipped", 1.0, "skipped");
    k.out.summary = {{"verdict", "skipped"}};
    return k.out;
  }
  for (std::size_t i = 0; i < r.delta.size(); ++i)
  {
    for (std::size_t j = 0; j < r.eps.size(); ++j)
    {
      k.add(kv("delta", r.delta[i]) + ";" + kv("eps", r.eps[j]), "compliant_ratio", r.compliant[i][j]);
    }
  }
  for (std::size_t j = 0; j < r.eps.size(); ++j)
  {
    k.add(kv("eps", r.eps[j]), "violating_ratio", r.violating[j]);
  }
  const double vmax = num(p, "variation_max");
  const double gmin = num(p, "growth_min");
  const bool eps_ok = r.compliant_eps_variation <= vmax;
  const bool delta_ok = r.compliant_delta_variation <= vmax;
  const bool grow_ok = r.violating_growth >= gmin;
  k.add("", "compliant_eps_variation", r.compliant_eps_variation, eps_ok ? "bounded" : "unbounded");
  k.add("", "compliant_delta_variation", r.compliant_delta_variation, delta_ok ? "bounded" : "unbounded");
  k.add("", "violating_growth", r.violating_growth, grow_ok ? "grows" : "flat");
  const bool contrast = eps_ok && delta_ok && grow_ok;
  k.out.summary = {{"verdict", contrast ? "contrast" : "no_contrast"},
                   {"compliant_eps_variation", r.compliant_eps_variation},
                   {"compliant_delta_variation", r.compliant_delta_variation},
                   {"violating_growth", r.violating_growth},
                   {"thresholds", thresholds({{"variation_max", vmax}, {"growth_min", gmin}})}};
  return k.out;
}

CellResult stone(const ExperimentEntry &e, double s)
{
  Sink k(e, s);
  const auto &p = e.params;
  const double lambda = num(p, "lambda");
  const Field f = Field::from_function(e.grid, [](const Point &x)
                                       { return cplx(std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]))); });
  std::vector<StoneResult> ladder;
  double worst = 0.0;
  for (double eps : list(p, "eps"))
  {
    const auto r = stone_jump(s, lambda, eps, f, f);
    ladder.push_back(r);
    worst = std::max(worst, r.algebraic_residual);
    const std::string tag = kv("eps", eps);
    k.add(tag, "algebraic_residual", r.algebraic_residual);
    k.add(tag, "pairing_re", r.pairing.real());
    k.add(tag, "pairing_im", r.pairing.imag());
    if (e.grid.dim() == 1)
    {
      k.add(tag, "shell_value", r.shell_value.real());
      k.add(tag, "shell_error", r.shell_error);
    }
  }
  const double atol = num(p, "algebraic_tol");
  const bool alg_ok = worst < atol;
  k.add("", "max_algebraic_residual", worst, pass_fail(alg_ok));
  json summary = {{"algebraic", pass_fail(alg_ok)}, {"max_algebraic_residual", worst}};
  const double omin = num(p, "order_min"), omax = num(p, "order_max");
  if (e.grid.dim() == 1 && ladder.size() >= 2)
  {
    const auto fit = stone_order(ladder);
    const bool ok = fit.slope >= omin && fit.slope <= omax;
    k.add("", "shell_order", fit.slope, ok ? "first_order" : "off_order");
    k.add("", "shell_order_r_squared", fit.r_squared);
    summary["shell_order"] = fit.slope;
    summary["order"] = ok ? "first_order" : "off_order";
  }
  summary["thresholds"] = thresholds({{"algebraic_tol", atol}, {"order_min", omin}, {"order_max", omax}});
  k.out.summary = summary;
  return k.out;
}

EigenOptions eigen_options(const json &p)
{
  EigenOptions o;
  if (p.contains("window_lo") && !p["window_lo"].is_null())
  {
    o.window_lo = num(p, "window_lo");
  }
  if (p.contains("window_hi"))
  {
    o.window_hi = num(p, "window_hi");
  }
  if (p.contains("tol"))
  {
    o.tol = num(p, "tol");
  }
  if (p.contains("cluster_tol"))
  {
    o.cluster_tol = num(p, "cluster_tol");
  }
  if (p.contains("max_iterations"))
  {
    o.max_iterations = integer(p, "max_iterations");
  }
  o.seed = static_cast<std::uint64_t>(integer(p, "seed"));
  return o;
}

CellResult eigen(const ExperimentEntry &e, double s)
{
  Sink k(e, s);
  const auto &p = e.params;
  const Field V = evaluate(potential_from_json(e.potential), e.grid);
  const auto opt = eigen_options(p);
  const auto run = eigen_solve(V, s, integer(p, "count"), opt);
  const double ctol = num(p, "characterization_tol");
  double worst_res = 0.0, worst_char = 0.0;
  for (std::size_t i = 0; i < run.pairs.size(); ++i)
  {
    const auto &q = run.pairs[i];
    const std::string tag = "k=" + std::to_string(i);
    k.add(tag, "lambda", q.lambda);
    k.add(tag, "residual", q.residual, q.converged ? "converged" : "not_converged");
    k.add(tag, "multiplicity", q.multiplicity);
    worst_res = std::max(worst_res, q.residual);
    if (q.lambda < 0.0)
    {
      const auto c = eigen_characterization_residual(q, V, s, 0.0);
      k.add(tag, "characterization_plus", c.plus, pass_fail(c.plus < ctol));
      k.add(tag, "characterization_minus", c.minus, pass_fail(c.minus < ctol));
      worst_char = std::max(worst_char, c.value());
    }
  }
  k.add("", "count", static_cast<double>(run.pairs.size()));
  k.add("", "lanczos_iterations", run.iterations);
  k.add("", "max_residual", worst_res, pass_fail(run.complete && worst_res < opt.tol));
  k.add("", "max_characterization_residual", worst_char, pass_fail(worst_char < ctol));
  json summary = {{"count", run.pairs.size()},
                  {"method", run.method},
                  {"residual", pass_fail(run.complete && worst_res < opt.tol)},
                  {"characterization", pass_fail(worst_char < ctol)}};
  json eig = json::array();
  for (const auto &q : run.pairs)
  {
    eig.push_back(q.lambda);
  }
  summary["eigenvalues"] = eig;

  const double dtol = num(p, "dense_tol");
  if (p["dense_check"].get<bool>() && e.grid.cells() <= 4096)
  {
    const auto dense = eigen_solve_dense(V, s, integer(p, "count"), opt);
    double diff = dense.pairs.size() == run.pairs.size() ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < std::min(dense.pairs.size(), run.pairs.size()); ++i)
    {
      diff = std::max(diff, std::abs(dense.pairs[i].lambda - run.pairs[i].lambda));
      k.add("k=" + std::to_string(i), "dense_lambda", dense.pairs[i].lambda);
    }
    k.add("", "dense_difference", diff, pass_fail(diff < dtol));
    summary["dense"] = pass_fail(diff < dtol);
  }

  const int npts = integer(p, "scan_points");
  const double mtol = num(p, "scan_match_tol");
  if (npts > 0)
  {
    const double lo = num(p, "scan_lo"), hi = num(p, "scan_hi");
    std::vector<double> grid;
    for (int i = 0; i < npts; ++i)
    {
      grid.push_back(lo + (hi - lo) * i / (npts - 1));
    }
    LambdaScanOptions so;
    so.threshold_factor = num(p, "scan_threshold_factor");
    const auto sc = lambda_scan(V, s, grid, so);
    for (std::size_t i = 0; i < sc.lambdas.size(); ++i)
    {
      k.add(kv("lambda", sc.lambdas[i]), "sigma_min", sc.sigma_min[i]);
    }
    // every candidate near an eigenvalue in the scan window and vice versa
    double worst = 0.0;
    std::size_t expected = 0;
    for (const auto &q : run.pairs)
    {
      if (q.lambda < lo || q.lambda > hi)
      {
        continue;
      }
      ++expected;
      double best = std::numeric_limits<double>::infinity();
      for (const auto &c : sc.candidates)
      {
        best = std::min(best, std::abs(c.lambda - q.lambda));
      }
      worst = std::max(worst, best);
    }
    for (std::size_t i = 0; i < sc.candidates.size(); ++i)
    {
      const auto &c = sc.candidates[i];
      double best = std::numeric_limits<double>::infinity();
      for (const auto &q : run.pairs)
      {
        best = std::min(best, std::abs(c.lambda - q.lambda));
      }
      worst = std::max(worst, best);
      const std::string tag = "candidate=" + std::to_string(i);
      k.add(tag, "lambda", c.lambda);
      k.add(tag, "sigma_min", c.sigma_min);
      k.add(tag, "margin", c.margin);
    }
    const bool ok = sc.candidates.size() == expected && worst < mtol;
    k.add("", "scan_median", sc.median);
    k.add("", "scan_threshold", sc.threshold);
    k.add("", "scan_mismatch", worst, ok ? "match" : "mismatch");
    summary["scan"] = ok ? "match" : "mismatch";
    summary["scan_candidates"] = sc.candidates.size();
  }
  summary["thresholds"] = thresholds({{"tol", opt.tol},
                                      {"cluster_tol", opt.cluster_tol},
                                      {"characterization_tol", ctol},
                                      {"dense_tol", dtol},
                                      {"scan_threshold_factor", num(p, "scan_threshold_factor")},
                                      {"scan_match_tol", mtol}});
  k.out.summary = summary;
  return k.out;
}

CellResult decay(const ExperimentEntry &e, double s)
{
  Sink k(e, s);
  const auto &p = e.params;
  const Field V = evaluate(potential_from_json(e.potential), e.grid);
  EigenOptions opt;
  opt.seed = static_cast<std::uint64_t>(integer(p, "seed"));
  const auto run = eigen_solve(V, s, integer(p, "count"), opt);
  auto sp = list(p, "s_prime");
  if (p["include_s"].get<bool>() && std::find(sp.begin(), sp.end(), s) == sp.end())
  {
    sp.push_back(s);
  }
  bool all = true;
  for (std::size_t i = 0; i < run.pairs.size(); ++i)
  {
    if (run.pairs[i].lambda >= 0.0)
    {
      continue;
    }
    for (const auto &d : decay_profile(run.pairs[i], V, s, list(p, "eps"), sp))
    {
      const std::string tag = "k=" + std::to_string(i) + ";" + kv("eps", d.eps) + ";" + kv("s_prime", d.s_prime);
      for (std::size_t r = 0; r < d.radii.size(); ++r)
      {
        k.add(tag + ";" + kv("rho", d.radii[r]), "W", d.W[r]);
      }
      k.add(tag, "saturation_ratio", d.saturation_ratio, d.saturated ? "saturated" : "not_saturated");
      k.add(tag, "bstar_weighted", d.bstar_weighted);
      k.add(tag, "vu_b_norm", d.vu_b_norm);
      k.add(tag, "proxy_ratio", d.proxy_ratio);
      all = all && d.saturated;
    }
  }
  k.add("", "count", static_cast<double>(run.pairs.size()));
  k.add("", "all_saturated", all ? 1.0 : 0.0, all ? "saturated" : "not_saturated");
  k.out.summary = {{"verdict", all ? "saturated" : "not_saturated"},
                   {"count", run.pairs.size()},
                   {"thresholds", thresholds({{"saturation_ratio", decay_saturation_ratio}})}};
  return k.out;
}

CellResult completeness(const ExperimentEntry &e, double s)
{
  Sink k(e, s);
  const auto &p = e.params;
  const auto spec = potential_from_json(e.potential);
  const Field V = evaluate(spec, e.grid);
  std::vector<Field> ev;
  if (!spec.is_zero())
  {
    EigenOptions opt;
    opt.seed = static_cast<std::uint64_t>(integer(p, "seed"));
    for (auto &q : eigen_solve(V, s, integer(p, "eigen_count"), opt).pairs)
    {
      k.add("", "eigenvalue", q.lambda);
      ev.push_back(std::move(q.u));
    }
  }
  CompletenessOptions co;
  co.rho_max = num(p, "rho_max");
  co.eps_multiple = num(p, "eps_multiple");
  const auto rep = completeness_1d(s, V, completeness_battery(e.grid), ev, co);
  const double tol = spec.is_zero() ? num(p, "zero_tol") : num(p, "tol");
  double worst = 0.0;
  for (const auto &r : rep.rows)
  {
    const std::string tag = "f=" + r.function;
    k.add(tag, "norm_sq", r.norm_sq);
    k.add(tag, "projection", r.projection);
    k.add(tag, "continuous", r.continuous);
    k.add(tag, "functional", r.functional);
    k.add(tag, "relative_error", r.relative_error, pass_fail(r.relative_error < tol));
    worst = std::max(worst, r.relative_error);
  }
  k.add("", "shells", static_cast<double>(rep.shells));
  k.add("", "max_relative_error", worst, pass_fail(worst < tol));
  k.out.summary = {{"verdict", pass_fail(worst < tol)},
                   {"max_relative_error", worst},
                   {"eigenvalues", ev.size()},
                   {"thresholds", thresholds({{"tol", tol}, {"eps_multiple", co.eps_multiple}})}};
  return k.out;
}

}  // namespace

CellResult run_cell(const ExperimentEntry &e, double s)
{
  if (e.kind == "shortrange") return shortrange(e, s);
  if (e.kind == "cook") return cook(e, s);
  if (e.kind == "waveop") return waveop(e, s);
  if (e.kind == "nonexistence") return nonexistence(e, s);
  if (e.kind == "lap") return lap(e, s);
  if (e.kind == "weighted_lap") return weighted_lap(e, s);
  if (e.kind == "stone") return stone(e, s);
  if (e.kind == "eigen") return eigen(e, s);
  if (e.kind == "decay") return decay(e, s);
  if (e.kind == "completeness") return completeness(e, s);
  throw ValidationError("unknown experiment '" + e.kind + "'");
}

}  // namespace fracscat::runner
