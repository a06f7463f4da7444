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

// Helpers shared by the experiment drivers. Not installed.

#pragma once

#include <noetherdyn/harness.hpp>
#include <noetherdyn/types.hpp>

#include <chrono>
#include <random>

namespace noetherdyn::harness::detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline Assertion at_most(std::string id, double measured, double tolerance,
                         std::string detail = "") {
  return {std::move(id), measured <= tolerance, measured, tolerance, std::move(detail)};
}

inline Assertion below(std::string id, double measured, double tolerance,
                       std::string detail = "") {
  return {std::move(id), measured < tolerance, measured, tolerance, std::move(detail)};
}

inline Assertion at_least(std::string id, double measured, double tolerance,
                          std::string detail = "") {
  return {std::move(id), measured >= tolerance, measured, tolerance, std::move(detail)};
}

inline Vec linspace(double lo, double hi, Eigen::Index n) {
  if (n == 1) return Vec::Constant(1, lo);
  return Vec::LinSpaced(n, lo, hi);
}

inline Vec random_normal(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

inline Vec random_unit(Eigen::Index n, std::mt19937_64& rng) {
  const Vec v = random_normal(n, rng);
  return v / v.norm();
}

inline Vec random_uniform(Eigen::Index n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline Mat random_skew(Eigen::Index n, std::mt19937_64& rng) {
  Mat a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) a.col(j) = random_normal(n, rng);
  return 0.5 * (a - a.transpose());
}

/// Symmetric positive definite with eigenvalues in roughly [0.5, 2].
inline Mat random_spd(Eigen::Index n, std::mt19937_64& rng) {
  Mat a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) a.col(j) = random_normal(n, rng);
  const Eigen::HouseholderQR<Mat> qr(a);
  const Mat basis = qr.householderQ();
  return basis * linspace(0.5, 2.0, n).asDiagonal() * basis.transpose();
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::vector<double> column(const std::vector<Vec>& states, Eigen::Index i) {
  std::vector<double> out(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) out[k] = states[k](i);
  return out;
}

inline double relative_error(double measured, double expected) {
  return std::abs(measured - expected) / std::abs(expected);
}

// Experiment drivers.
ExperimentResult run_table2(const Config& config);
ExperimentResult run_noether_residual(const Config& config);
ExperimentResult run_conservation(const Config& config);
ExperimentResult run_modified_eq(const Config& config);
ExperimentResult run_bn_effective_lr(const Config& config);
ExperimentResult run_steady_state(const Config& config);
ExperimentResult run_rmsprop_equiv(const Config& config);

}  // namespace noetherdyn::harness::detail
