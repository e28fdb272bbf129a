// Copyright 2026 The ridgekit Authors.
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

#include "ridgekit/constructor.hpp"
#include "ridgekit/convnet.hpp"
#include "ridgekit/estimator.hpp"
#include "ridgekit/minimax.hpp"
#include "ridgekit/polyfactor.hpp"

namespace {

ridgekit::RidgeSpec sine_spec(int d) {
  ridgekit::RidgeSpec spec;
  spec.d = d;
  std::vector<double> xi(static_cast<std::size_t>(d), 1.0 / std::sqrt(static_cast<double>(d)));
  spec.components.push_back({xi, ridgekit::Univariate::sine(), 1.0, 1.0, 1.0});
  return spec;
}

void BM_Factorize(benchmark::State& state) {
  std::mt19937_64 eng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(state.range(0)));
  for (auto& v : w) v = u(eng);
  const ridgekit::FilterSequence W(w);
  for (auto _ : state) benchmark::DoNotOptimize(ridgekit::factorize_filter(W, 2));
}
BENCHMARK(BM_Factorize)->Arg(8)->Arg(16)->Arg(32);

void BM_Forward(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto model = ridgekit::build_network(sine_spec(d), 2, 16, 1.0);
  std::vector<double> x(static_cast<std::size_t>(d), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(ridgekit::forward(model, x));
}
BENCHMARK(BM_Forward)->Arg(4)->Arg(16)->Arg(64);

void BM_FitCoefficients(benchmark::State& state) {
  const auto spec = sine_spec(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = ridgekit::sample_dataset(spec, n, 0.3, 1.3, 7);
  const std::vector<std::vector<double>> dirs{spec.components[0].xi};
  const int N = ridgekit::resolution_for(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(ridgekit::fit_coefficients(dirs, 2, N, 1.3, data, 1e-2));
}
BENCHMARK(BM_FitCoefficients)->Arg(1024)->Arg(16384);

void BM_VgCode(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ridgekit::vg_code(static_cast<int>(state.range(0)), 3));
}
BENCHMARK(BM_VgCode)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
