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

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace noetherdyn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr const char* kVersion = "0.1.0";

/// A point left the open domain of a distance-generating function, or a
/// schedule was evaluated where it is singular.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Scale-invariant objectives are undefined at the origin.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller violated a precondition (wrong dimension, untagged symmetry, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Optimizer state reached an impossible value (e.g. RMSProp accumulator <= 0).
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical integration aborted; carries the time at which it happened.
class IntegrationAbort : public std::runtime_error {
 public:
  IntegrationAbort(const std::string& what, double time)
      : std::runtime_error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

inline void require(bool condition, const char* message) {
  if (!condition) throw ContractError(message);
}

}  // namespace noetherdyn
