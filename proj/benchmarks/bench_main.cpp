/* Copyright 2026 The entropylab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "entropylab/entropylab.hpp"

using namespace entropylab;

namespace {

MultiInstance multi(Index k, Index m, Index n, std::uint64_t seed) {
  Rng rng(RngSeed{seed});
  MultiInstance inst{random_hermitian(n, 1.0, rng), random_contraction_tuple(k, m, n, false, rng), {}};
  for (Index i = 0; i < k; ++i) inst.A.push_back(random_pd(m, {0.05, 5.0}, rng));
  return inst;
}

void BM_SpectralDecompose(benchmark::State& state) {
  const auto m = random_hermitian(state.range(0), 1.0, RngSeed{1});
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decompose(m));
}
BENCHMARK(BM_SpectralDecompose)->DenseRange(2, 8, 2);

void BM_TraceExpFunctional(benchmark::State& state) {
  const Index n = state.range(0);
  const auto inst = multi(1, n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(trace_exp_functional(inst.A[0], inst.L, inst.H[0]));
}
BENCHMARK(BM_TraceExpFunctional)->DenseRange(2, 8, 2);

void BM_MultiTraceExp(benchmark::State& state) {
  const auto inst = multi(state.range(0), 4, 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(multi_trace_exp(inst));
}
BENCHMARK(BM_MultiTraceExp)->DenseRange(1, 4);

void BM_BlockLiftTrace(benchmark::State& state) {
  const auto inst = multi(state.range(0), 4, 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(block_lift_trace(block_lift(inst)));
}
BENCHMARK(BM_BlockLiftTrace)->DenseRange(1, 4);

void BM_CheckTrial(benchmark::State& state) {
  const auto kind = static_cast<CheckKind>(state.range(0));
  CheckConfig cfg = default_config(kind);
  cfg.trials = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_check(kind, cfg));
  state.SetLabel(std::string(check_name(kind)));
}
BENCHMARK(BM_CheckTrial)->DenseRange(0, static_cast<int>(kAllChecks.size()) - 1);

void BM_PhiSolve(benchmark::State& state) {
  const Index n = state.range(0);
  const auto inst = multi(1, n, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(maximize(PhiProblem{inst.A[0], inst.L, inst.H[0]}));
}
BENCHMARK(BM_PhiSolve)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
