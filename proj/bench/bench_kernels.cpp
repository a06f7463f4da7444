// Copyright 2026 The noetherdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference path against the OpenMP path for each parallel kernel.
// The second benchmark argument selects the policy: 0 serial, 1 parallel.

#include <noetherdyn/continuous.hpp>
#include <noetherdyn/geometry.hpp>
#include <noetherdyn/kernels.hpp>
#include <noetherdyn/losses.hpp>
#include <noetherdyn/symmetry.hpp>
#include <noetherdyn/transforms.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

namespace {

using namespace noetherdyn;

Execution policy_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
}

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> y(n);
  for (auto& v : y) v = std::exp(0.3 * normal(rng));
  return y;
}

void BM_ExpConvolutionDirect(benchmark::State& state) {
  const auto g = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::exp_convolution_direct(g, 0.01, 0.5, policy_of(state)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExpConvolutionDirect)->ArgsProduct({{2000, 8000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_CenteredDerivative(benchmark::State& state) {
  const auto y = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::centered_derivative(y, 0.01, Stencil::FivePoint, policy_of(state)));
  }
}
BENCHMARK(BM_CenteredDerivative)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_Table2Report(benchmark::State& state) {
  const int dim = 4;
  const std::vector<Metric> metrics = {Metric::euclidean(dim), Metric::negative_entropy(dim)};
  Mat skew = Mat::Zero(dim, dim);
  skew(0, 1) = 1.0;
  skew(1, 0) = -1.0;
  const std::vector<SymmetryTransform> transforms = {
      SymmetryTransform::translation(Vec::Ones(dim)), SymmetryTransform::rotation(skew),
      SymmetryTransform::scale()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        table2_report(metrics, transforms, static_cast<int>(state.range(0)), 7, 0.0, policy_of(state)));
  }
}
BENCHMARK(BM_Table2Report)->ArgsProduct({{2000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_NoetherResidual(benchmark::State& state) {
  const Metric metric = Metric::negative_entropy(3);
  const auto schedule = BregmanSchedule::natural(1.0, 1.0);
  const Loss loss = Loss::mexican_hat(1.0, 0.5);
  Vec q0(3), v0(3);
  q0 << 0.8, 1.2, 0.6;
  v0 << 0.1, -0.1, 0.05;
  const Trajectory tr =
      integrate_rk4(eom_bregman(metric, schedule, loss), q0, v0, 0.0, 1.0, 1.0 / static_cast<double>(state.range(0)));
  const auto transform = SymmetryTransform::scale();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        noether_residual(metric, schedule, transform, tr, Stencil::FivePoint, policy_of(state)));
  }
}
BENCHMARK(BM_NoetherResidual)->ArgsProduct({{20000, 200000}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
