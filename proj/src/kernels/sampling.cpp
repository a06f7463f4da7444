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

// Kinetic-asymmetry classification over (metric x transform x sample).

#include <noetherdyn/symmetry.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace noetherdyn {

namespace {

struct PhasePoint {
  Vec q;
  Vec q_dot;
};

// Draws until the point, its displaced point and the finite-difference
// neighbours all lie in the metric domain.
PhasePoint draw_state(const Metric& metric, const std::vector<SymmetryTransform>& transforms,
                      double alpha, std::mt19937_64& rng) {
  const Eigen::Index n = metric.dimension();
  std::uniform_real_distribution<double> position(0.5, 2.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> velocity(-0.4, 0.4);
  const bool positive = std::holds_alternative<Metric::NegativeEntropy>(metric.data());
  const double damp = std::exp(-alpha);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    PhasePoint p{Vec(n), Vec(n)};
    for (Eigen::Index i = 0; i < n; ++i) p.q(i) = positive ? position(rng) : normal(rng);
    for (Eigen::Index i = 0; i < n; ++i) p.q_dot(i) = velocity(rng);
    bool ok = metric.in_domain(p.q) && metric.in_domain(p.q + damp * p.q_dot);
    for (const auto& tr : transforms) {
      for (double s : {-1e-4, 1e-4}) {
        const Vec qs = tr.apply(p.q, s);
        ok = ok && metric.in_domain(qs) &&
             metric.in_domain(qs + damp * tr.apply_velocity(p.q, p.q_dot, s));
      }
    }
    if (ok) return p;
  }
  throw DomainError("table2_report: could not sample a state inside the metric domain");
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

Table2Report table2_report(const std::vector<Metric>& metrics,
                           const std::vector<SymmetryTransform>& transforms, int samples,
                           std::uint64_t seed, double alpha, Execution policy) {
  require(samples >= 1, "table2_report: samples must be >= 1");
  require(!metrics.empty() && !transforms.empty(), "table2_report: empty metric or transform list");
  for (const auto& m : metrics) {
    for (const auto& t : transforms) t.check_dimension(m.dimension());
  }

  // States are drawn serially so the sample set is independent of threading.
  std::vector<std::vector<PhasePoint>> states(metrics.size());
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    std::mt19937_64 rng(seed + 7919 * m);
    for (int k = 0; k < samples; ++k) states[m].push_back(draw_state(metrics[m], transforms, alpha, rng));
  }

  const std::size_t cells = metrics.size() * transforms.size();
  const std::size_t per_cell = static_cast<std::size_t>(samples);
  const auto values = kernels::map_indices<double>(cells * per_cell, policy, [&](std::size_t i) {
    const std::size_t cell = i / per_cell;
    const std::size_t m = cell / transforms.size();
    const std::size_t t = cell % transforms.size();
    const PhasePoint& p = states[m][i % per_cell];
    return std::abs(kinetic_asymmetry(metrics[m], transforms[t], p.q, p.q_dot, alpha));
  });

  Table2Report report;
  report.samples = samples;
  for (const auto& m : metrics) report.metrics.push_back(m.name());
  for (const auto& t : transforms) report.transforms.push_back(t.name());
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::vector<double> abs_values(values.begin() + cell * per_cell,
                                         values.begin() + (cell + 1) * per_cell);
    Table2Cell c;
    c.metric = report.metrics[cell / transforms.size()];
    c.transform = report.transforms[cell % transforms.size()];
    c.max_abs = *std::max_element(abs_values.begin(), abs_values.end());
    c.min_abs = *std::min_element(abs_values.begin(), abs_values.end());
    c.median_abs = median(abs_values);
    c.verdict = c.max_abs <= kSymmetricThreshold ? Symmetry::Symmetric : Symmetry::Asymmetric;
    report.cells.push_back(std::move(c));
  }
  return report;
}

}  // namespace noetherdyn
