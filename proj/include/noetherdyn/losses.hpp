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

#include <noetherdyn/transforms.hpp>
#include <noetherdyn/types.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace noetherdyn {

/// Deterministic differentiable objective with exact declared symmetries.
///
/// Scale-invariant kinds stand in for networks with normalization layers;
/// the two-layer linear chain stands in for the rescale symmetry of ReLU
/// layers. Loss is a cheap-to-copy value (shared immutable payload).
class Loss {
 public:
  struct RayleighQuotient {
    Mat a;
  };
  /// f(q) = base(q / |q|).
  struct NormalizedComposite {
    std::shared_ptr<const Loss> base;
  };
  /// f = 1/2 |W2 W1 X - Y|_F^2 with q = (vec W1, vec W2), column-major.
  struct TwoLayerLinear {
    Mat inputs;   // d_in x samples
    Mat targets;  // d_out x samples
    Eigen::Index hidden;
  };
  /// Cross entropy of softmax(q) against a single class label.
  struct SoftmaxXent {
    Eigen::Index classes;
    Eigen::Index label;
  };
  /// f(q) = v(|q|).
  struct RadialWell {
    std::function<double(double)> v;
    std::function<double(double)> dv;
    std::string label;
  };
  /// f(q) = 1/2 q^T A q - b^T q.
  struct Quadratic {
    Mat a;
    Vec b;
  };
  /// f(q) = -c * atan2(q_j, q_i): a scale-invariant angular drive whose
  /// gradient never vanishes. The value has a branch cut; the gradient is
  /// smooth away from the (i, j) axis.
  struct PlanarWinding {
    Eigen::Index dim;
    Eigen::Index i;
    Eigen::Index j;
    double strength;
  };
  struct Sum {
    std::vector<std::shared_ptr<const Loss>> terms;
  };
  using Kind = std::variant<RayleighQuotient, NormalizedComposite, TwoLayerLinear, SoftmaxXent,
                            RadialWell, Quadratic, PlanarWinding, Sum>;

  static Loss rayleigh_quotient(const Mat& a);
  static Loss normalized(const Loss& base);
  static Loss two_layer_linear(const Mat& inputs, const Mat& targets, Eigen::Index hidden);
  /// Scalar chain f = 1/2 (q2 q1 x - y)^2.
  static Loss scalar_chain(double x, double y);
  static Loss softmax_xent(Eigen::Index classes, Eigen::Index label);
  static Loss radial_well(std::function<double(double)> v, std::function<double(double)> dv,
                          std::string label);
  /// v(r) = depth * (r^2 - radius^2)^2.
  static Loss mexican_hat(double radius, double depth);
  static Loss quadratic(const Mat& a, const Vec& b);
  static Loss planar_winding(Eigen::Index dim, Eigen::Index i, Eigen::Index j, double strength);
  static Loss sum(const std::vector<Loss>& terms);

  double value(const Vec& q) const;
  Vec grad(const Vec& q) const;

  /// Transform kinds under which value() is exactly invariant.
  std::vector<SymmetryKind> symmetry_tags() const;
  bool has_tag(SymmetryKind kind) const;
  bool scale_invariant() const { return has_tag(SymmetryKind::Scale); }

  /// Required parameter dimension, or 0 when any dimension is accepted.
  Eigen::Index dimension() const;
  /// Index splitting q into (q1, q2) for the rescale symmetry; 0 if none.
  Eigen::Index rescale_split() const;
  std::string name() const;
  const Kind& data() const { return *kind_; }

 private:
  explicit Loss(Kind kind) : kind_(std::make_shared<const Kind>(std::move(kind))) {}
  void check_argument(const Vec& q) const;

  std::shared_ptr<const Kind> kind_;
};

/// Gradient of f evaluated on the unit sphere, q / |q|.
Vec normalized_gradient(const Loss& loss, const Vec& q);

struct SymmetryReport {
  bool passed = false;
  double max_value_deviation = 0.0;      // max |f(Q) - f(q)| / (1 + |f(q)|)
  double max_generator_overlap = 0.0;    // max |<grad f, dQ/ds>| / (1 + |f(q)|)
  int samples = 0;
};

/// Checks f(apply(q, s)) == f(q) for random q and s in [-0.5, 0.5] and the
/// orthogonality <grad f(q), generator(q)> == 0, both to 1e-10 (1 + |f|).
/// Throws ContractError when the transform kind is not among the loss tags.
SymmetryReport check_symmetry(const Loss& loss, const SymmetryTransform& transform, int samples,
                              std::uint64_t seed);

}  // namespace noetherdyn
