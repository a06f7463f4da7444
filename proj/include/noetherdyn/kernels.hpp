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

// Data-parallel loops. Every kernel has a serial reference path selected by
// Execution::Serial; the OpenMP path partitions independent outputs only, so
// both paths produce bit-identical results.

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <vector>

namespace noetherdyn {

enum class Execution { Serial, Parallel };

/// Centered finite-difference stencils on a uniform grid.
/// ThreePoint is second order, FivePoint is fourth order.
enum class Stencil { ThreePoint, FivePoint };

inline std::size_t stencil_half_width(Stencil s) { return s == Stencil::ThreePoint ? 1 : 2; }

namespace kernels {

/// Calls body(i) for i in [0, n). Exceptions thrown by body are rethrown on
/// the calling thread (the first one wins).
template <class Body>
void for_each_index(std::size_t n, Execution policy, Body&& body) {
  if (policy == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Evaluates fn(i) for each index into a vector, in index order.
template <class T, class Fn>
std::vector<T> map_indices(std::size_t n, Execution policy, Fn&& fn) {
  std::vector<T> out(n);
  for_each_index(n, policy, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

/// Centered derivative of y sampled with spacing dt. Output element k is the
/// derivative at index k + stencil_half_width(stencil); the result has
/// y.size() - 2 * half_width entries.
std::vector<double> centered_derivative(std::span<const double> y, double dt, Stencil stencil,
                                        Execution policy);

/// Trapezoid quadrature of I(t_n) = int_0^{t_n} e^{-rate (t_n - tau)} g(tau) dtau
/// on the grid t_n = n dt, evaluated independently per output sample
/// (O(N^2) work, parallel over n). Serial is the reference implementation.
std::vector<double> exp_convolution_direct(std::span<const double> g, double dt, double rate,
                                           Execution policy);

/// The same trapezoid sums by the O(N) recursion
///   I_{n+1} = e^{-rate dt} I_n + dt/2 (e^{-rate dt} g_n + g_{n+1}).
/// Agrees with exp_convolution_direct to rounding.
std::vector<double> exp_convolution_recursive(std::span<const double> g, double dt, double rate);

}  // namespace kernels
}  // namespace noetherdyn
