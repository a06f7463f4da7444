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

#include <noetherdyn/kernels.hpp>
#include <noetherdyn/types.hpp>

#include <cmath>

namespace noetherdyn::kernels {

std::vector<double> centered_derivative(std::span<const double> y, double dt, Stencil stencil,
                                        Execution policy) {
  require(dt > 0.0, "centered_derivative: dt must be positive");
  const std::size_t h = stencil_half_width(stencil);
  require(y.size() >= 2 * h + 1, "centered_derivative: series shorter than the stencil");
  const std::size_t n = y.size() - 2 * h;
  std::vector<double> out(n);
  if (stencil == Stencil::ThreePoint) {
    for_each_index(n, policy, [&](std::size_t k) {
      const std::size_t i = k + 1;
      out[k] = (y[i + 1] - y[i - 1]) / (2.0 * dt);
    });
  } else {
    for_each_index(n, policy, [&](std::size_t k) {
      const std::size_t i = k + 2;
      out[k] = (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) / (12.0 * dt);
    });
  }
  return out;
}

std::vector<double> exp_convolution_direct(std::span<const double> g, double dt, double rate,
                                           Execution policy) {
  require(dt > 0.0, "exp_convolution_direct: dt must be positive");
  const std::size_t n = g.size();
  std::vector<double> out(n, 0.0);
  for_each_index(n, policy, [&](std::size_t target) {
    if (target == 0) return;
    // Weights e^{-rate (t_target - t_j)}; endpoints carry half weight.
    double sum = 0.5 * (std::exp(-rate * dt * static_cast<double>(target)) * g[0] + g[target]);
    for (std::size_t j = 1; j < target; ++j) {
      sum += std::exp(-rate * dt * static_cast<double>(target - j)) * g[j];
    }
    out[target] = dt * sum;
  });
  return out;
}

std::vector<double> exp_convolution_recursive(std::span<const double> g, double dt, double rate) {
  require(dt > 0.0, "exp_convolution_recursive: dt must be positive");
  std::vector<double> out(g.size(), 0.0);
  const double decay = std::exp(-rate * dt);
  for (std::size_t i = 1; i < g.size(); ++i) {
    out[i] = decay * out[i - 1] + 0.5 * dt * (decay * g[i - 1] + g[i]);
  }
  return out;
}

}  // namespace noetherdyn::kernels
