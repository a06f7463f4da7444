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

#include <noetherdyn/closedform.hpp>

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using namespace noetherdyn;

GradNormHistory constant(double value, double dt, std::size_t n) {
  return GradNormHistory{0.0, dt, std::vector<double>(n, value)};
}

GradNormHistory random_history(gen::Gen& g, double dt, std::size_t n) {
  std::vector<double> v(n);
  double x = g.normal();
  for (auto& s : v) {
    x += 0.3 * g.normal();
    s = std::exp(x);
  }
  return GradNormHistory{0.0, dt, v};
}

TEST(R2Schedule, PureDecay) {
  const double eta = 0.01, beta = 0.9, k = 1e-3, r0 = 1.7;
  const auto hist = constant(0.0, 0.5, 401);
  const auto r2 = r2_schedule(hist, eta, beta, k, r0);
  for (std::size_t i = 0; i < r2.size(); ++i) {
    EXPECT_LE(oracle::rel_err(r2[i], std::exp(-2.0 * k * hist.time(i) / (1.0 - beta)) * r0 * r0), 1e-13);
  }
}

TEST(R2Schedule, AccumulatesWithoutWeightDecay) {
  const double eta = 0.01, beta = 0.9, c = 0.3, r0 = 1.2;
  const auto hist = constant(c, 0.25, 801);
  const auto r2 = r2_schedule(hist, eta, beta, 0.0, r0);
  const double p = 2.0 * eta * (1.0 + beta) / std::pow(1.0 - beta, 3);
  for (std::size_t i = 0; i < r2.size(); i += 40) {
    EXPECT_LE(oracle::rel_err(r2[i], std::sqrt(p * c * hist.time(i) + std::pow(r0, 4))), 1e-13);
  }
}

TEST(R2Schedule, StartsAtTheInitialNorm) {
  gen::Gen g(61);
  const auto r2 = r2_schedule(random_history(g, 0.1, 10), 0.01, 0.9, 1e-4, 1.3);
  EXPECT_EQ(r2.front(), 1.3 * 1.3);
}

TEST(R2Schedule, MatchesTermByTermTrapezoid) {
  gen::for_all(10, 62, [](gen::Gen& g, int) {
    const double eta = g.uniform(0.001, 0.1), beta = g.uniform(0, 0.95), k = g.uniform(0, 0.01);
    const double r0 = g.uniform(0.5, 2.0);
    const auto hist = random_history(g, 0.05, 300);
    const auto r2 = r2_schedule(hist, eta, beta, k, r0);
    const MemoryKernel kern = bn_kernel(eta, beta, k);
    for (std::size_t n : {0ul, 1ul, 17ul, 299ul}) {
      const double t = hist.time(n);
      const double ref = std::sqrt(kern.prefactor * oracle::trapezoid_memory(hist.gsq, hist.dt, kern.rate, n) +
                                   std::exp(-kern.rate * t) * std::pow(r0, 4));
      EXPECT_LE(oracle::rel_err(r2[n], ref), 1e-12) << n;
    }
  });
}

TEST(R2Schedule, QuadratureIsSecondOrder) {
  auto at_end = [](double dt) {
    std::vector<double> v;
    const auto n = static_cast<std::size_t>(std::lround(10.0 / dt));
    for (std::size_t i = 0; i <= n; ++i) v.push_back(1.0 + std::sin(static_cast<double>(i) * dt));
    return r2_schedule(GradNormHistory{0.0, dt, v}, 0.01, 0.9, 0.01, 1.0).back();
  };
  const double a = at_end(0.2), b = at_end(0.1), c = at_end(0.05);
  EXPECT_NEAR(oracle::convergence_ratio(a, b, c), 4.0, 0.4);
}

TEST(R2Schedule, RecursiveAndDirectAgree) {
  gen::Gen g(63);
  const auto hist = random_history(g, 0.01, 2000);
  const auto a = r2_schedule(hist, 0.01, 0.9, 1e-3, 1.0, Quadrature::Recursive);
  const auto b = r2_schedule(hist, 0.01, 0.9, 1e-3, 1.0, Quadrature::Direct);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_LE(oracle::rel_err(a[i], b[i]), 1e-12) << i;
}

TEST(Schedules, MonotoneMemoryAndPositivity) {
  const auto zero = constant(0.0, 0.1, 200);
  const auto r2 = r2_schedule(zero, 0.01, 0.9, 1e-2, 1.0);
  const auto sg = g_schedule(zero, 0.01, 0.99, 2.0);
  for (std::size_t i = 1; i < r2.size(); ++i) {
    EXPECT_LT(r2[i], r2[i - 1]);
    EXPECT_LT(sg[i], sg[i - 1]);
    EXPECT_GT(r2[i], 0.0);
    EXPECT_GT(sg[i], 0.0);
  }
}

TEST(GSchedule, Examples) {
  const double eta = 0.01, rho = 0.99, g0 = 2.5;
  // Constant input is a fixed point of the continuous kernel; the trapezoid
  // rule misses it by O((lambda dt)^2), lambda = 1 here.
  for (double v : g_schedule(constant(g0, 0.1, 100), eta, rho, g0)) {
    EXPECT_LE(oracle::rel_err(v, std::sqrt(g0)), 0.1 * 0.1 / 12.0);
  }
  const auto hist = constant(0.0, 0.1, 100);
  const auto d = g_schedule(hist, eta, rho, g0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_LE(oracle::rel_err(d[i], std::exp(-(1.0 - rho) * hist.time(i) / (2.0 * eta)) * std::sqrt(g0)), 1e-13);
  }
  // rho -> 1 freezes the accumulator.
  gen::Gen g(64);
  const auto frozen = g_schedule(random_history(g, 0.1, 100), eta, 1.0 - 1e-12, g0);
  EXPECT_NEAR(frozen.back(), std::sqrt(g0), 1e-8);
}

TEST(History, GapsAreContractErrors) {
  EXPECT_THROW(r2_schedule(GradNormHistory{0.0, 0.1, {}}, 0.01, 0.9, 1e-4, 1.0), ContractError);
  EXPECT_THROW(r2_schedule(GradNormHistory{0.0, 0.1, {1.0, std::nan(""), 1.0}}, 0.01, 0.9, 1e-4, 1.0),
               ContractError);
  EXPECT_THROW(r2_schedule(GradNormHistory{0.0, 0.1, {1.0, -1.0}}, 0.01, 0.9, 1e-4, 1.0), ContractError);
  EXPECT_THROW(r2_schedule(constant(1.0, 0.1, 5), 0.01, 0.9, 1e-4, 0.0), ContractError);
}

TEST(Steady, Examples) {
  EXPECT_NEAR(steady_angular_speed(0.01, 0.9, 1e-4), 1.026e-3, 1e-6);
  EXPECT_NEAR(steady_angular_speed(0.01, 0.9, 1e-4), std::sqrt(2.0 * 0.01 * 1e-4 / 1.9), 1e-18);
  // beta = 0: sqrt(k/m) per unit time with m = eta/2 is sqrt(2k/eta); per step multiply by eta.
  EXPECT_NEAR(steady_angular_speed(0.02, 0.0, 3e-4) / 0.02, std::sqrt(2.0 * 3e-4 / 0.02), 1e-15);
  EXPECT_NEAR(steady_radius(0.01, 0.0, 1e-4, 1.0), std::pow(50.0, 0.25), 1e-14);
  EXPECT_NEAR(steady_radius(0.01, 0.0, 1e-4, 1.0), 2.659, 1e-3);
  EXPECT_THROW(steady_radius(0.01, 0.9, 0.0, 1.0), ContractError);
}

TEST(Steady, TransientCutoff) {
  EXPECT_DOUBLE_EQ(transient_cutoff(0.9, 1e-4, 2000.0), 400.0);
  EXPECT_DOUBLE_EQ(transient_cutoff(0.9, 0.1, 2000.0), 1.25);
  EXPECT_DOUBLE_EQ(transient_cutoff(0.9, 0.0, 50.0), 10.0);
}

TEST(BnRmspropMap, RateMatchFamily) {
  gen::for_all(20, 65, [](gen::Gen& g, int) {
    const double eta = g.uniform(1e-3, 0.1), beta = g.uniform(0, 0.95), k = g.uniform(1e-5, 1e-2);
    const double ep = g.uniform(1e-4, 1e-2);
    const BnRmspropMap m = bn_rmsprop_map(eta, beta, k, ep);
    EXPECT_NEAR(m.rho_prime, 1.0 - 4.0 * k * ep / (1.0 - beta), 1e-15);
    EXPECT_NEAR((1.0 - m.rho_prime) / ep, 4.0 * k / (1.0 - beta), 1e-10 * m.rate);
    const BnRmspropMap back = bn_rmsprop_map_for_decay(eta, beta, k, m.rho_prime);
    EXPECT_LE(oracle::rel_err(back.eta_prime, ep), 1e-10);
  });
  const BnRmspropMap free = bn_rmsprop_map(0.01, 0.9, 0.0, 0.01);
  EXPECT_EQ(free.rho_prime, 1.0);
  EXPECT_FALSE(free.satisfiable);
  EXPECT_THROW(bn_rmsprop_map_for_decay(0.01, 0.9, 0.0, 0.5), ContractError);
}

TEST(BnRmspropMap, FlagshipIsOverConstrained) {
  const BnRmspropMap m = bn_rmsprop_map(0.01, 0.9, 1e-4, 0.01);
  EXPECT_NEAR(m.prefactor_ratio, 9500.0, 1e-6);
  EXPECT_FALSE(m.satisfiable);
  // The satisfiable weight decay for this (eta, beta): k = eta (1+beta) / (2 (1-beta)^2).
  const BnRmspropMap s = bn_rmsprop_map(0.01, 0.9, 0.95, 0.01);
  EXPECT_NEAR(s.prefactor_ratio, 1.0, 1e-12);
  EXPECT_TRUE(s.satisfiable);
  EXPECT_NEAR(s.rho_prime, 0.62, 1e-14);
}

TEST(BnRmspropMap, FunctionalIdentityOnRandomHistories) {
  gen::for_all(20, 66, [](gen::Gen& g, int) {
    const double eta = 0.01, beta = 0.9, k = 0.95;
    const double ep = g.uniform(1e-3, 0.02);
    const BnRmspropMap m = bn_rmsprop_map(eta, beta, k, ep);
    ASSERT_TRUE(m.satisfiable);
    const auto hist = random_history(g, 0.01, 1000);
    const double r0 = g.uniform(0.5, 2.0);
    const auto r2 = r2_schedule(hist, eta, beta, k, r0);
    const auto sg = g_schedule(hist, m.eta_prime, m.rho_prime, std::pow(r0, 4));
    for (std::size_t i = 0; i < r2.size(); ++i) ASSERT_LE(oracle::rel_err(r2[i], sg[i]), 1e-10) << i;
  });
}

TEST(Bernoulli, MatchesQuadratureAndSteadyState) {
  const double eta = 0.01, k = 1e-4;
  const double m = eta / 2.0, mu = 1.0;
  const auto r2 = solve_bernoulli_check(m, mu, k, 1.0, 1.0, 100.0, 0.01);
  EXPECT_NEAR(r2.front(), 1.0, 1e-15);
  const auto quad = r2_schedule(constant(1.0, 0.01, r2.size()), eta, 0.0, k, 1.0);
  EXPECT_LE(oracle::rel_err(r2.back(), quad.back()), 1e-8);
  const double far = bernoulli_r2(m, mu, k, 1.0, 1.0, 1e9);
  EXPECT_LE(oracle::rel_err(far * far, m / (k * mu * mu)), 1e-10);
  EXPECT_LE(oracle::rel_err(std::sqrt(far), steady_radius(eta, 0.0, k, 1.0)), 1e-10);
  EXPECT_NEAR(bernoulli_r2(m, mu, 0.0, 2.0, 1.5, 3.0), std::sqrt(4.0 * m * 2.0 * 3.0 + std::pow(1.5, 4)), 1e-14);
}

}  // namespace
