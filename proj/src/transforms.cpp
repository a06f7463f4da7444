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

#include <noetherdyn/transforms.hpp>

#include "overloaded.hpp"

#include <algorithm>
#include <cmath>

namespace noetherdyn {

using detail::Overloaded;

std::string to_string(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::Translation:
      return "translation";
    case SymmetryKind::Rotation:
      return "rotation";
    case SymmetryKind::Scale:
      return "scale";
    case SymmetryKind::Rescale:
      return "rescale";
  }
  return "unknown";
}

Mat matrix_exponential(const Mat& x) {
  require(x.rows() == x.cols(), "matrix_exponential: square matrix required");
  const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat scaled = x / std::ldexp(1.0, squarings);

  // ||scaled||_1 <= 1/2, so 20 Taylor terms are far below double epsilon.
  Mat result = Mat::Identity(x.rows(), x.cols());
  Mat term = Mat::Identity(x.rows(), x.cols());
  for (int k = 1; k <= 20; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

SymmetryTransform SymmetryTransform::translation(const Vec& direction) {
  const double n = direction.norm();
  require(n > 0.0, "translation: direction must be non-zero");
  return SymmetryTransform(Translation{direction / n});
}

SymmetryTransform SymmetryTransform::rotation(const Mat& skew) {
  require(skew.rows() == skew.cols(), "rotation: generator must be square");
  const double scale = std::max(1.0, skew.norm());
  require((skew + skew.transpose()).norm() <= 1e-12 * scale,
          "rotation: generator must be skew-symmetric");
  return SymmetryTransform(Rotation{skew});
}

SymmetryTransform SymmetryTransform::scale() { return SymmetryTransform(Scale{}); }

SymmetryTransform SymmetryTransform::rescale(Eigen::Index split) {
  require(split > 0, "rescale: split must be positive");
  return SymmetryTransform(Rescale{split});
}

SymmetryKind SymmetryTransform::kind() const {
  return std::visit(Overloaded{
                        [](const Translation&) { return SymmetryKind::Translation; },
                        [](const Rotation&) { return SymmetryKind::Rotation; },
                        [](const Scale&) { return SymmetryKind::Scale; },
                        [](const Rescale&) { return SymmetryKind::Rescale; },
                    },
                    kind_);
}

void SymmetryTransform::check_dimension(Eigen::Index n) const {
  std::visit(Overloaded{
                 [n](const Translation& t) {
                   require(t.direction.size() == n, "translation: dimension mismatch");
                 },
                 [n](const Rotation& r) {
                   require(r.generator.rows() == n, "rotation: dimension mismatch");
                 },
                 [](const Scale&) {},
                 [n](const Rescale& r) { require(r.split < n, "rescale: split outside vector"); },
             },
             kind_);
}

Vec SymmetryTransform::apply(const Vec& q, double s) const {
  check_dimension(q.size());
  return std::visit(Overloaded{
                        [&](const Translation& t) -> Vec { return q + s * t.direction; },
                        [&](const Rotation& r) -> Vec {
                          if (s == 0.0) return q;
                          return matrix_exponential(s * r.generator) * q;
                        },
                        [&](const Scale&) -> Vec { return (1.0 + s) * q; },
                        [&](const Rescale& r) -> Vec {
                          require(s > -1.0, "rescale: s must exceed -1");
                          Vec out = q;
                          out.head(r.split) *= (1.0 + s);
                          out.tail(q.size() - r.split) /= (1.0 + s);
                          return out;
                        },
                    },
                    kind_);
}

Vec SymmetryTransform::apply_velocity(const Vec& q, const Vec& q_dot, double s) const {
  check_dimension(q.size());
  require(q.size() == q_dot.size(), "apply_velocity: dimension mismatch");
  return std::visit(Overloaded{
                        [&](const Translation&) -> Vec { return q_dot; },
                        [&](const Rotation& r) -> Vec {
                          if (s == 0.0) return q_dot;
                          return matrix_exponential(s * r.generator) * q_dot;
                        },
                        [&](const Scale&) -> Vec { return (1.0 + s) * q_dot; },
                        [&](const Rescale& r) -> Vec {
                          require(s > -1.0, "rescale: s must exceed -1");
                          Vec out = q_dot;
                          out.head(r.split) *= (1.0 + s);
                          out.tail(q.size() - r.split) /= (1.0 + s);
                          return out;
                        },
                    },
                    kind_);
}

Vec SymmetryTransform::generator(const Vec& q) const {
  check_dimension(q.size());
  return std::visit(Overloaded{
                        [&](const Translation& t) -> Vec { return t.direction; },
                        [&](const Rotation& r) -> Vec { return r.generator * q; },
                        [&](const Scale&) -> Vec { return q; },
                        [&](const Rescale& r) -> Vec {
                          Vec out = q;
                          out.tail(q.size() - r.split) *= -1.0;
                          return out;
                        },
                    },
                    kind_);
}

Vec SymmetryTransform::velocity_generator(const Vec& q, const Vec& q_dot) const {
  check_dimension(q.size());
  require(q.size() == q_dot.size(), "velocity_generator: dimension mismatch");
  return std::visit(Overloaded{
                        [&](const Translation&) -> Vec { return Vec::Zero(q.size()); },
                        [&](const Rotation& r) -> Vec { return r.generator * q_dot; },
                        [&](const Scale&) -> Vec { return q_dot; },
                        [&](const Rescale& r) -> Vec {
                          Vec out = q_dot;
                          out.tail(q.size() - r.split) *= -1.0;
                          return out;
                        },
                    },
                    kind_);
}

}  // namespace noetherdyn
