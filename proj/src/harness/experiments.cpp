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

#include "support.hpp"

namespace noetherdyn::harness {

ExperimentResult run_experiment(Experiment e, const Config& config) {
  validate(e, config);
  detail::Stopwatch clock;
  ExperimentResult result;
  switch (e) {
    case Experiment::Table2: result = detail::run_table2(config); break;
    case Experiment::NoetherResidual: result = detail::run_noether_residual(config); break;
    case Experiment::Conservation: result = detail::run_conservation(config); break;
    case Experiment::ModifiedEq: result = detail::run_modified_eq(config); break;
    case Experiment::BnEffectiveLr: result = detail::run_bn_effective_lr(config); break;
    case Experiment::SteadyState: result = detail::run_steady_state(config); break;
    case Experiment::RmspropEquiv: result = detail::run_rmsprop_equiv(config); break;
  }
  result.kind = e;
  result.wall_seconds = clock.seconds();
  return result;
}

}  // namespace noetherdyn::harness
