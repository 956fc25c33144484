// Copyright 2026 The ICNNM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "icnnm/conv_op.hpp"
#include "icnnm/fft.hpp"
#include "icnnm/mask.hpp"
#include "icnnm/solver.hpp"
#include "icnnm/spectral.hpp"
#include "icnnm/synth.hpp"

namespace {

using namespace icnnm;

DenseTensor random_square(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  DenseTensor t(Dims{n, n});
  for (Index i = 0; i < t.size(); ++i) t[i] = g(rng);
  return t;
}

void BM_CircularConvolve(benchmark::State& state) {
  const Index n = state.range(0);
  DenseTensor L = random_square(n, 1);
  DenseTensor X = random_square(8, 2);
  for (auto _ : state) benchmark::DoNotOptimize(circular_convolve(L, X));
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_CircularConvolve)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_ConvGram(benchmark::State& state) {
  const Index n = state.range(0);
  DenseTensor L = random_square(n, 3);
  KernelShape ks{{8, 8}};
  for (auto _ : state) benchmark::DoNotOptimize(conv_gram(L, ks));
}
BENCHMARK(BM_ConvGram)->Arg(64)->Arg(128)->Arg(256);

void BM_ProxL21(benchmark::State& state) {
  const Index m = state.range(0);
  Eigen::MatrixXd W = Eigen::MatrixXd::Random(m, 64);
  for (auto _ : state) benchmark::DoNotOptimize(prox_l21(W, 0.3));
}
BENCHMARK(BM_ProxL21)->Arg(1024)->Arg(4096);

void BM_Svt(benchmark::State& state) {
  const Index m = state.range(0);
  Eigen::MatrixXd W = Eigen::MatrixXd::Random(m, 64);
  for (auto _ : state) benchmark::DoNotOptimize(svt(W, 0.3));
}
BENCHMARK(BM_Svt)->Arg(1024)->Arg(4096);

void BM_BasisApply(benchmark::State& state) {
  const Index n = state.range(0);
  DenseTensor L = random_square(n, 4);
  KernelShape ks{{8, 8}};
  EigenBasis basis = learn_ensemble_basis({L}, ks);
  BasisConvolver conv(L.dims(), ks, basis.K);
  for (auto _ : state) benchmark::DoNotOptimize(conv.apply(L));
}
BENCHMARK(BM_BasisApply)->Arg(64)->Arg(128);

void BM_IcnnmIterations(benchmark::State& state) {
  DenseTensor L0 = synth_smooth_field({64, 64}, 0.15, 7);
  KernelShape ks{{8, 8}};
  EigenBasis basis = learn_ensemble_basis({L0}, ks);
  MaskSpec spec;
  spec.kind = MaskKind::kBlockGrid;
  spec.rate = 0.5;
  SamplingMask mask = generate_mask(L0.dims(), spec);
  SolverConfig cfg;
  cfg.max_iters = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(icnnm_solve(L0, mask, basis, cfg));
}
BENCHMARK(BM_IcnnmIterations)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_CnnmIterations(benchmark::State& state) {
  DenseTensor L0 = synth_smooth_field({64, 64}, 0.15, 7);
  KernelShape ks{{8, 8}};
  MaskSpec spec;
  spec.kind = MaskKind::kBlockGrid;
  spec.rate = 0.5;
  SamplingMask mask = generate_mask(L0.dims(), spec);
  SolverConfig cfg;
  cfg.max_iters = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(cnnm_solve(L0, mask, ks, cfg));
}
BENCHMARK(BM_CnnmIterations)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
