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

#include <string>
#include <variant>

namespace noetherdyn {

enum class SymmetryKind { Translation, Rotation, Scale, Rescale };

std::string to_string(SymmetryKind kind);

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
Mat matrix_exponential(const Mat& x);

/// One-parameter family of maps q -> Q(q, s) with Q(q, 0) = q.
///
/// generator() is dQ/ds at s = 0 and velocity_generator() is d(dQ/dt)/ds at
/// s = 0. Both are linear in their arguments for the four supported kinds,
/// which is what makes d/dt generator(q(t)) == velocity_generator(q, qdot).
class SymmetryTransform {
 public:
  struct Translation {
    Vec direction;  // unit norm
  };
  struct Rotation {
    Mat generator;  // skew-symmetric
  };
  struct Scale {};
  struct Rescale {
    Eigen::Index split;  // q = (q[0, split), q[split, n))
  };
  using Kind = std::variant<Translation, Rotation, Scale, Rescale>;

  /// Direction is normalized; throws ContractError on a zero vector.
  static SymmetryTransform translation(const Vec& direction);
  /// Throws ContractError unless a + a^T vanishes to 1e-12 relative.
  static SymmetryTransform rotation(const Mat& skew);
  static SymmetryTransform scale();
  static SymmetryTransform rescale(Eigen::Index split);

  SymmetryKind kind() const;
  std::string name() const { return to_string(kind()); }
  const Kind& data() const { return kind_; }

  Vec apply(const Vec& q, double s) const;
  /// Velocity of the transformed path, d/dt Q(q(t), s).
  Vec apply_velocity(const Vec& q, const Vec& q_dot, double s) const;
  Vec generator(const Vec& q) const;
  Vec velocity_generator(const Vec& q, const Vec& q_dot) const;

  /// Throws ContractError if the transform cannot act on a vector of size n.
  void check_dimension(Eigen::Index n) const;

 private:
  explicit SymmetryTransform(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

}  // namespace noetherdyn
