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

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

namespace {

using namespace noetherdyn;

std::vector<double> sampled(double dt, std::size_t n, double (*f)(double)) {
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = f(static_cast<double>(i) * dt);
  return y;
}

TEST(CenteredDerivative, ExactOnLowDegreePolynomials) {
  auto cubic = [](double t) { return t * t * t - 2.0 * t + 1.0; };
  auto quartic = [](double t) { return t * t * t * t; };
  const double dt = 0.1;
  const auto y3 = sampled(dt, 20, +[](double t) { return t * t - 2.0 * t; });
  const auto d3 = kernels::centered_derivative(y3, dt, Stencil::ThreePoint, Execution::Serial);
  ASSERT_EQ(d3.size(), 18u);
  for (std::size_t k = 0; k < d3.size(); ++k) EXPECT_NEAR(d3[k], 2.0 * (k + 1) * dt - 2.0, 1e-12);
  std::vector<double> y5;
  for (int i = 0; i < 20; ++i) y5.push_back(cubic(i * dt) + quartic(i * dt));
  const auto d5 = kernels::centered_derivative(y5, dt, Stencil::FivePoint, Execution::Serial);
  ASSERT_EQ(d5.size(), 16u);
  for (std::size_t k = 0; k < d5.size(); ++k) {
    const double t = static_cast<double>(k + 2) * dt;
    EXPECT_NEAR(d5[k], 3.0 * t * t - 2.0 + 4.0 * t * t * t, 1e-11);
  }
}

TEST(CenteredDerivative, ConvergenceOrders) {
  auto err = [](Stencil s, double dt) {
    const auto n = static_cast<std::size_t>(std::lround(2.0 / dt)) + 1;
    const auto y = sampled(dt, n, +[](double t) { return std::sin(3.0 * t); });
    const auto d = kernels::centered_derivative(y, dt, s, Execution::Serial);
    const std::size_t h = stencil_half_width(s);
    double e = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      e = std::max(e, std::abs(d[k] - 3.0 * std::cos(3.0 * static_cast<double>(k + h) * dt)));
    }
    return e;
  };
  EXPECT_NEAR(err(Stencil::ThreePoint, 0.02) / err(Stencil::ThreePoint, 0.01), 4.0, 0.3);
  EXPECT_NEAR(err(Stencil::FivePoint, 0.02) / err(Stencil::FivePoint, 0.01), 16.0, 1.5);
}

TEST(CenteredDerivative, SerialAndParallelAreBitIdentical) {
  gen::Gen g(71);
  std::vector<double> y(10001);
  for (auto& v : y) v = g.normal();
  for (Stencil s : {Stencil::ThreePoint, Stencil::FivePoint}) {
    EXPECT_EQ(kernels::centered_derivative(y, 0.01, s, Execution::Serial),
              kernels::centered_derivative(y, 0.01, s, Execution::Parallel));
  }
}

TEST(ExpConvolution, DirectRecursiveAndOracleAgree) {
  gen::for_all(5, 72, [](gen::Gen& g, int) {
    std::vector<double> y(500);
    for (auto& v : y) v = std::exp(g.normal());
    const double dt = g.uniform(0.001, 0.1), rate = g.uniform(0.0, 20.0);
    const auto serial = kernels::exp_convolution_direct(y, dt, rate, Execution::Serial);
    const auto parallel = kernels::exp_convolution_direct(y, dt, rate, Execution::Parallel);
    const auto rec = kernels::exp_convolution_recursive(y, dt, rate);
    EXPECT_EQ(serial, parallel);
    for (std::size_t n : {0ul, 1ul, 2ul, 250ul, 499ul}) {
      const double ref = oracle::trapezoid_memory(y, dt, rate, n);
      EXPECT_NEAR(serial[n], ref, 1e-13 * (1.0 + ref));
      EXPECT_NEAR(rec[n], ref, 1e-12 * (1.0 + ref));
    }
  });
}

TEST(ExpConvolution, ConstantInputClosedForm) {
  // Trapezoid on e^{-rate s}: the exact integral plus O(dt^2).
  const double dt = 1e-3, rate = 2.0;
  const std::vector<double> one(2001, 1.0);
  const auto rec = kernels::exp_convolution_recursive(one, dt, rate);
  EXPECT_NEAR(rec.back(), (1.0 - std::exp(-rate * 2.0)) / rate, 1e-6);
}

TEST(ForEachIndex, ExceptionsReachTheCaller) {
  EXPECT_THROW(kernels::for_each_index(100, Execution::Parallel,
                                       [](std::size_t i) {
                                         if (i == 37) throw std::runtime_error("boom");
                                       }),
               std::runtime_error);
  const auto squares = kernels::map_indices<std::size_t>(1000, Execution::Parallel, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < squares.size(); ++i) ASSERT_EQ(squares[i], i * i);
}

}  // namespace
