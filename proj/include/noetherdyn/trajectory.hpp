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

#pragma once

#include <noetherdyn/types.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace noetherdyn {

/// Uniformly sampled (t, q, q_dot) with named scalar channels aligned to
/// the same grid.
struct Trajectory {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<Vec> q;
  std::vector<Vec> q_dot;
  std::map<std::string, std::vector<double>> channels;

  std::size_t size() const { return times.size(); }
  double time(std::size_t i) const { return times[i]; }
  double t_end() const { return times.empty() ? t0 : times.back(); }

  /// Throws ContractError unless the grid is uniform to 1e-12 (relative to
  /// max(1, |t|)) and every state and channel has one entry per time.
  void validate() const;
};

inline void Trajectory::validate() const {
  require(q.size() == times.size(), "trajectory: q not aligned with times");
  require(q_dot.empty() || q_dot.size() == times.size(),
          "trajectory: q_dot not aligned with times");
  for (const auto& [name, values] : channels) {
    if (values.size() != times.size()) {
      throw ContractError("trajectory: channel '" + name + "' not aligned with times");
    }
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double expected = t0 + static_cast<double>(i) * dt;
    const double scale = std::max(1.0, std::abs(expected));
    if (std::abs(times[i] - expected) > 1e-12 * scale) {
      throw ContractError("trajectory: time grid is not uniform");
    }
  }
}

}  // namespace noetherdyn
