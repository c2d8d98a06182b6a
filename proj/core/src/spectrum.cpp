// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include "fracscat/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "fracscat/error.hpp"
#include "fracscat/fourier.hpp"
#include "fracscat/fredholm.hpp"
#include "fracscat/krylov.hpp"
#include "fracscat/multiplier.hpp"
#include "fracscat/resolvent.hpp"
#include "fracscat/rng.hpp"

namespace fracscat
{

namespace
{

void require_real(const Field &V)
{
  require_space(V, Space::physical, "eigen");
  for (std::size_t c = 0; c < V.size(); ++c)
  {
    if (V[c].imag() != 0.0)
    {
      throw ValidationError("eigen module requires a real potential");
    }
  }
}

std::vector<cplx> power_table(const GridSpec &g, double s, double shift, bool invert)
{
  std::vector<cplx> t(g.cells());
  for (std::size_t c = 0; c < g.cells(); ++c)
  {
    const double v = std::pow(g.frequency_norm(c), s) - shift;
    t[c] = invert ? 1.0 / v : v;
  }
  return t;
}

double min_potential(const Field &V)
{
  double m = 0.0;
  for (std::size_t c = 0; c < V.size(); ++c)
  {
    m = std::min(m, V[c].real());
  }
  return m;
}

// Unit L2 norm, largest entry real positive.
Field normalize_pair_vector(Field u)
{
  std::size_t arg = 0;
  for (std::size_t c = 0; c < u.size(); ++c)
  {
    if (std::abs(u[c]) > std::abs(u[arg]))
    {
      arg = c;
    }
  }
  const cplx phase = std::abs(u[arg]) > 0.0 ? std::conj(u[arg]) / std::abs(u[arg]) : cplx(1.0);
  u *= phase / l2_norm(u);
  return u;
}

void tag_clusters(std::vector<EigenPair> &pairs, double tol)
{
  std::sort(pairs.begin(), pairs.end(),
            [](const EigenPair &a, const EigenPair &b) { return a.lambda < b.lambda; });
  std::size_t start = 0;
  for (std::size_t i = 0; i <= pairs.size(); ++i)
  {
    if (i == pairs.size() || i == 0 || pairs[i].lambda - pairs[i - 1].lambda > tol)
    {
      for (std::size_t k = start; k < i; ++k)
      {
        pairs[k].multiplicity = static_cast<int>(i - start);
      }
      start = i;
    }
  }
  int c = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i)
  {
    if (i > 0 && pairs[i].lambda - pairs[i - 1].lambda > tol)
    {
      ++c;
    }
    pairs[i].cluster = c;
  }
}

void check_orthonormal(const std::vector<EigenPair> &pairs)
{
  for (std::size_t i = 0; i < pairs.size(); ++i)
  {
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
    {
      const double o = std::abs(inner(pairs[i].u, pairs[j].u));
      if (o > 1e-8)
      {
        std::ostringstream os;
        os << "eigenvectors " << i << " and " << j << " overlap by " << o;
        throw ConvergenceError(os.str(), 0, o);
      }
    }
  }
}

EigenPair make_pair(const Field &V, double s, double lambda, Field u)
{
  EigenPair p{lambda, normalize_pair_vector(std::move(u))};
  // a real Hamiltonian has real eigenvectors; drop roundoff in the imaginary part
  bool real_v = true;
  for (std::size_t c = 0; c < V.size(); ++c)
  {
    real_v = real_v && V[c].imag() == 0.0;
  }
  if (real_v)
  {
    for (auto &x : p.u.values())
    {
      x = cplx(x.real(), 0.0);
    }
    p.u *= 1.0 / l2_norm(p.u);
  }
  const Field Hu = apply_hamiltonian(p.u, V, s);
  p.lambda = inner(Hu, p.u).real();
  p.residual = l2_norm(Hu - p.lambda * p.u);
  return p;
}

}  // namespace

Field apply_hamiltonian(const Field &u, const Field &V, double s)
{
  require_space(u, Space::physical, "apply_hamiltonian");
  require_same_grid(u, V, "apply_hamiltonian");
  Field out = frac_laplacian(s, u);
  for (std::size_t c = 0; c < u.size(); ++c)
  {
    out[c] += V[c] * u[c];
  }
  return out;
}

Eigen::MatrixXd hamiltonian_matrix(const Field &V, double s)
{
  require_real(V);
  const auto &g = V.grid();
  const std::size_t n = g.cells();
  if (n > 16384)
  {
    throw ValidationError("hamiltonian_matrix: grid too large for a dense matrix");
  }
  auto k = power_table(g, s, 0.0, false);
  detail::fft_inplace(g.dim(), g.points(), k.data(), +1);
  const double inv = 1.0 / static_cast<double>(n);
  Eigen::MatrixXd H(n, n);
  const int N = g.points();
  for (std::size_t a = 0; a < n; ++a)
  {
    const auto ia = g.unravel(a);
    for (std::size_t b = 0; b < n; ++b)
    {
      const auto ib = g.unravel(b);
      std::array<int, 3> d{0, 0, 0};
      for (int q = 0; q < g.dim(); ++q)
      {
        d[q] = ((ia[q] - ib[q]) % N + N) % N;
      }
      H(a, b) = k[g.ravel(d)].real() * inv;
    }
    H(a, a) += V[a].real();
  }
  return H;
}

EigenRun eigen_solve_dense(const Field &V, double s, int count, const EigenOptions &opt)
{
  require_real(V);
  const auto &g = V.grid();
  if (g.cells() > opt.dense_limit)
  {
    throw ValidationError("eigen_solve_dense: grid exceeds the dense limit");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian_matrix(V, s));
  EigenRun run;
  run.method = "dense";
  for (Eigen::Index i = 0; i < es.eigenvalues().size() && static_cast<int>(run.pairs.size()) < count; ++i)
  {
    const double lam = es.eigenvalues()[i];
    if (lam <= opt.window_lo || lam >= opt.window_hi)
    {
      continue;
    }
    Field u(g);
    for (std::size_t c = 0; c < g.cells(); ++c)
    {
      u[c] = es.eigenvectors()(static_cast<Eigen::Index>(c), i);
    }
    auto p = make_pair(V, s, lam, std::move(u));
    p.converged = p.residual < opt.tol;
    run.complete = run.complete && p.converged;
    run.pairs.push_back(std::move(p));
  }
  tag_clusters(run.pairs, opt.cluster_tol);
  check_orthonormal(run.pairs);
  return run;
}

EigenRun eigen_solve(const Field &V, double s, int count, const EigenOptions &opt)
{
  require_real(V);
  if (!(s > 0.0) || count < 1)
  {
    throw ValidationError("eigen_solve needs s > 0 and count >= 1");
  }
  const auto &g = V.grid();
  const std::size_t n = g.cells();
  const double sigma = min_potential(V) - 1.0;
  const auto precond = power_table(g, s, sigma, true);
  const auto shifted = power_table(g, s, sigma, false);

  const LinearMap A = [&](std::span<const cplx> x, std::span<cplx> y)
  {
    Field xf(g, Space::physical, std::vector<cplx>(x.begin(), x.end()));
    const Field r = apply_table(shifted, xf);
    for (std::size_t c = 0; c < n; ++c)
    {
      y[c] = r[c] + V[c].real() * x[c];
    }
  };
  const LinearMap M = [&](std::span<const cplx> x, std::span<cplx> y)
  {
    Field xf(g, Space::physical, std::vector<cplx>(x.begin(), x.end()));
    const Field r = apply_table(precond, xf);
    std::copy(r.values().begin(), r.values().end(), y.begin());
  };
  const KrylovOptions inner_opt{0, opt.inner_max, opt.inner_tol};

  using Vec = Eigen::VectorXcd;
  Rng rng(opt.seed);
  std::vector<Vec> Q;
  Vec q(static_cast<Eigen::Index>(n));
  for (auto &x : q)
  {
    x = rng.normal();
  }
  q /= q.norm();
  Q.push_back(q);
  std::vector<double> alpha, beta;
  const int m_max = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(opt.max_iterations)));

  EigenRun run;
  run.method = "lanczos";
  int prev_count = -1;
  bool done = false;
  for (int j = 0; j < m_max && !done; ++j)
  {
    Vec w = Vec::Zero(static_cast<Eigen::Index>(n));
    const auto kr = pcg(A, M, std::span<const cplx>(Q[j].data(), n), std::span<cplx>(w.data(), n), inner_opt);
    if (!kr.converged && kr.relative_residual > 1e-10)
    {
      throw ConvergenceError("shift-invert solve stalled", kr.iterations, kr.relative_residual);
    }
    alpha.push_back(Q[j].dot(w).real());
    for (int pass = 0; pass < 2; ++pass)
    {
      for (const auto &qk : Q)
      {
        w -= qk.dot(w) * qk;
      }
    }
    const double b = w.norm();
    run.iterations = j + 1;
    const bool exhausted = b < 1e-13 || j + 1 == m_max;
    if (!exhausted)
    {
      beta.push_back(b);
      Q.push_back(w / b);
    }
    if (!exhausted && (j + 1 < 8 || (j + 1) % 8 != 0))
    {
      continue;
    }

    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
    {
      T(i, i) = alpha[i];
      if (i + 1 < m)
      {
        T(i, i + 1) = T(i + 1, i) = beta[i];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    std::vector<EigenPair> found;
    bool all_ok = true;
    for (int i = m - 1; i >= 0 && static_cast<int>(found.size()) < count; --i)
    {
      const double theta = es.eigenvalues()[i];
      if (theta <= 0.0)
      {
        break;
      }
      const double lam = sigma + 1.0 / theta;
      if (lam >= opt.window_hi)
      {
        break;
      }
      if (lam <= opt.window_lo)
      {
        continue;
      }
      Vec y = Vec::Zero(static_cast<Eigen::Index>(n));
      for (int k = 0; k < m; ++k)
      {
        y += es.eigenvectors()(k, i) * Q[k];
      }
      Field u(g, Space::physical, std::vector<cplx>(y.data(), y.data() + n));
      auto p = make_pair(V, s, lam, std::move(u));
      p.converged = p.residual < opt.tol;
      all_ok = all_ok && p.converged;
      found.push_back(std::move(p));
    }
    const int cnt = static_cast<int>(found.size());
    if ((all_ok && cnt == prev_count) || exhausted)
    {
      run.pairs = std::move(found);
      run.complete = all_ok;
      done = true;
    }
    prev_count = all_ok ? cnt : -1;
  }

  if (!run.complete && opt.allow_dense_fallback && n <= opt.dense_limit)
  {
    auto dense = eigen_solve_dense(V, s, count, opt);
    dense.iterations = run.iterations;
    dense.method = "lanczos+dense";
    return dense;
  }
  tag_clusters(run.pairs, opt.cluster_tol);
  check_orthonormal(run.pairs);
  return run;
}

CharacterizationResidual eigen_characterization_residual(const EigenPair &pair, const Field &V,
                                                         double s, double eps)
{
  const double lam = pair.lambda;
  if (lam == 0.0)
  {
    throw ValidationError("characterization residual needs lambda != 0");
  }
  if (eps < 0.0 || (eps == 0.0 && lam > 0.0))
  {
    throw ValidationError("characterization residual needs eps > 0 for lambda > 0");
  }
  const Field Vu = V.times(pair.u);
  const double un = l2_norm(pair.u);
  auto at = [&](double sign, double e) { return pair.u + free_resolvent(s, cplx(lam, sign * e), Vu); };
  CharacterizationResidual r;
  for (double sign : {1.0, -1.0})
  {
    Field v = eps == 0.0 ? at(sign, 0.0) : 2.0 * at(sign, 0.5 * eps) - at(sign, eps);
    (sign > 0 ? r.plus : r.minus) = l2_norm(v) / un;
  }
  return r;
}

DecayProfile weighted_profile(const Field &u, double exponent, double s_prime)
{
  require_space(u, Space::physical, "weighted_profile");
  const auto &g = u.grid();
  const Field Ju = bessel_potential(s_prime, u);
  const double L = g.half_width();
  DecayProfile p;
  p.exponent = exponent;
  p.s_prime = s_prime;
  p.radii = {L / 16.0, L / 8.0, L / 4.0, L / 2.0};
  p.W.assign(p.radii.size(), 0.0);
  const double w = g.cell_volume();
  for (std::size_t c = 0; c < g.cells(); ++c)
  {
    const double r = g.radius(c);
    const double v = std::norm(Ju[c]) * std::pow(1.0 + r * r, exponent);
    for (std::size_t k = 0; k < p.radii.size(); ++k)
    {
      if (r < p.radii[k])
      {
        p.W[k] += v * w;
      }
    }
  }
  for (auto &x : p.W)
  {
    x = std::sqrt(x);
  }
  p.saturation_ratio = p.W[2] > 0.0 ? p.W[3] / p.W[2] : 1.0;
  p.saturated = p.saturation_ratio < decay_saturation_ratio;
  return p;
}

std::vector<DecayProfile> decay_profile(const EigenPair &pair, const Field &V, double s,
                                        const std::vector<double> &eps_list,
                                        const std::vector<double> &s_prime_list)
{
  const DyadicLayout layout(pair.u.grid());
  const Field Vu = V.times(pair.u);
  const double vub = b_norm(Vu, layout);
  const double bw = weighted_bstar_norm(bessel_potential(s, pair.u), power_weight(s + 0.5), layout);
  std::vector<DecayProfile> out;
  for (double e : eps_list)
  {
    if (!(e > 0.0))
    {
      throw ValidationError("decay_profile needs eps > 0");
    }
    for (double sp : s_prime_list)
    {
      if (sp > s)
      {
        throw ValidationError("decay_profile needs s' <= s");
      }
      auto p = weighted_profile(pair.u, s - e, sp);
      p.eps = e;
      p.bstar_weighted = bw;
      p.vu_b_norm = vub;
      p.proxy_ratio = vub > 0.0 ? p.W.back() / vub : std::numeric_limits<double>::infinity();
      out.push_back(std::move(p));
    }
  }
  return out;
}

double fredholm_sigma_min(const Field &V, double s, double lambda)
{
  if (lambda == 0.0)
  {
    throw ValidationError("lambda_scan needs lambda != 0");
  }
  double eps = 0.0;
  if (lambda > 0.0)
  {
    check_shell(V.grid(), s, lambda);
    eps = epsilon_floor(V.grid(), s, lambda);
  }
  return RestrictedFredholm(V, s, cplx(lambda, eps)).smallest_singular_value();
}

LambdaScan lambda_scan(const Field &V, double s, const std::vector<double> &lambdas,
                       const LambdaScanOptions &opt)
{
  require_real(V);
  if (lambdas.size() < 3 || !std::is_sorted(lambdas.begin(), lambdas.end()))
  {
    throw ValidationError("lambda_scan needs an increasing grid of at least 3 points");
  }
  for (double l : lambdas)
  {
    if (l == 0.0 || (l < 0.0 && lambdas.back() > 0.0))
    {
      throw ValidationError("lambda_scan window must stay on one side of 0");
    }
  }
  LambdaScan sc;
  sc.lambdas = lambdas;
  sc.sigma_min.assign(lambdas.size(), 0.0);
  const int nt = std::max(1, std::min<int>(opt.threads, static_cast<int>(lambdas.size())));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(nt));
  for (int t = 0; t < nt; ++t)
  {
    pool.emplace_back(
      [&, t]
      {
        try
        {
          for (std::size_t i = static_cast<std::size_t>(t); i < lambdas.size(); i += static_cast<std::size_t>(nt))
          {
            sc.sigma_min[i] = fredholm_sigma_min(V, s, lambdas[i]);
          }
        }
        catch (...)
        {
          errs[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
  }
  for (auto &th : pool)
  {
    th.join();
  }
  for (auto &e : errs)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }

  auto sorted = sc.sigma_min;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
  sc.median = sorted[sorted.size() / 2];
  sc.threshold = opt.threshold_factor * sc.median;

  const auto &sv = sc.sigma_min;
  const std::size_t n = sv.size();
  const int bits = std::max(10, static_cast<int>(-std::log2(opt.refine_tol)));
  for (std::size_t i = 0; i < n; ++i)
  {
    const double left = i > 0 ? sv[i - 1] : std::numeric_limits<double>::infinity();
    const double right = i + 1 < n ? sv[i + 1] : std::numeric_limits<double>::infinity();
    if (!(sv[i] <= left && sv[i] <= right && (sv[i] < left || sv[i] < right)))
    {
      continue;
    }
    const double a = lambdas[i > 0 ? i - 1 : i];
    const double b = lambdas[i + 1 < n ? i + 1 : i];
    auto f = [&](double l) { return fredholm_sigma_min(V, s, l); };
    const auto best = boost::math::tools::brent_find_minima(f, a, b, bits);
    if (best.second < sc.threshold)
    {
      bool dup = false;
      for (const auto &c : sc.candidates)
      {
        dup = dup || std::abs(c.lambda - best.first) < 1e-8;
      }
      if (!dup)
      {
        sc.candidates.push_back({best.first, best.second});
      }
    }
  }
  for (auto &c : sc.candidates)
  {
    for (const auto &o : sc.candidates)
    {
      if (&o != &c)
      {
        c.margin = std::min(c.margin, std::abs(o.lambda - c.lambda));
      }
    }
  }
  return sc;
}

}  // namespace fracscat
