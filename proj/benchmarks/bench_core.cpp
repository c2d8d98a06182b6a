// Copyright (c) 2026 fracscat developers
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <cmath>

#include "fracscat/dyadic.hpp"
#include "fracscat/dynamics.hpp"
#include "fracscat/fourier.hpp"
#include "fracscat/fredholm.hpp"
#include "fracscat/multiplier.hpp"
#include "fracscat/potential.hpp"

using namespace fracscat;

namespace
{

Field gaussian(const GridSpec &g)
{
  return Field::from_function(g, [](const Point &x) { return cplx(std::exp(-0.5 * x[0] * x[0])); });
}

void BM_ForwardTransform(benchmark::State &st)
{
  GridSpec g(1, 256.0, static_cast<int>(st.range(0)));
  Field u = gaussian(g);
  for (auto _ : st)
    benchmark::DoNotOptimize(forward_transform(u));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_ForwardTransform)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_FracLaplacian(benchmark::State &st)
{
  GridSpec g(1, 256.0, static_cast<int>(st.range(0)));
  Field u = gaussian(g);
  for (auto _ : st)
    benchmark::DoNotOptimize(frac_laplacian(1.5, u));
}
BENCHMARK(BM_FracLaplacian)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_BNorm(benchmark::State &st)
{
  GridSpec g(1, 256.0, static_cast<int>(st.range(0)));
  DyadicLayout lay(g);
  Field u = gaussian(g);
  for (auto _ : st)
    benchmark::DoNotOptimize(b_norm(u, lay));
}
BENCHMARK(BM_BNorm)->Arg(4096)->Arg(65536);

void BM_SplitStep(benchmark::State &st)
{
  GridSpec g(1, 256.0, 4096);
  Field V = evaluate(PotentialSpec(GaussianWell{2.0, 1.0}), g);
  SplitStep H(V, 1.0, 0.02);
  Field u = gaussian(g);
  for (auto _ : st)
    benchmark::DoNotOptimize(H.evolve(u, 1.0));
}
BENCHMARK(BM_SplitStep)->Unit(benchmark::kMillisecond);

void BM_FredholmSolve(benchmark::State &st)
{
  GridSpec g(1, 64.0, 1024);
  Field V = evaluate(PotentialSpec(GaussianWell{2.0, 1.0}), g);
  Field f = gaussian(g);
  FredholmOptions opt;
  opt.method = st.range(0) == 0 ? FredholmMethod::gmres : FredholmMethod::restricted_dense;
  for (auto _ : st)
    benchmark::DoNotOptimize(fredholm_solve(2.0, cplx(1.0, 0.05), V, f, opt));
}
BENCHMARK(BM_FredholmSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
