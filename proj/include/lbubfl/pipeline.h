// Copyright 2026 The lbubfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end solver: LP relaxation, tri-criteria rounding, the instance
// chain I -> I1 -> I2 -> Icap, a capacitated solve, and the facility-tree
// repair back to a solution of the original instance.

#ifndef LBUBFL_PIPELINE_H_
#define LBUBFL_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "lbubfl/cfl.h"
#include "lbubfl/core.h"
#include "lbubfl/transform.h"
#include "lbubfl/treefix.h"
#include "lbubfl/tricriteria.h"

namespace lbubfl {

struct PipelineOptions {
  TriCriteriaOptions tri;
  std::optional<double> delta;  // default: formula at measured alpha
  bool post_flow = false;       // re-assign on the final open set
  // Throw kInternal when any structural check is violated.
  bool check_invariants = false;
  CflOptions cfl;
};

struct StageTiming {
  std::string stage;
  double ms = 0.0;
};

struct PipelineResult {
  TriCriteriaSolution tri;
  std::optional<I1Instance> i1;
  std::optional<I2Instance> i2;
  std::optional<CflInstance> icap;
  std::optional<CflSolution> ascap;       // as returned by the solver
  std::optional<CflSolution> normalized;  // self-serving
  std::optional<TreeFixResult> fix;       // absent when |F^t| < 2

  Solution solution;
  double lp_opt = 0.0;
  double delta = 0.0;
  double cost = 0.0;
  double cost_before_post_flow = 0.0;
  BoundReport bounds;      // alpha = beta = 1
  int64_t upper_limit = 0;  // ceil((beta_t + 1) U)
  int upper_excess = 0;     // open facilities above upper_limit
  std::vector<StageTiming> timings;

  int Violations() const;  // structural checks plus upper_excess
};

// Throws kMetric, kInfeasible, kParameter, kAlphaAbort or kInternal.
PipelineResult SolveLbubfl(const Instance& inst,
                           const PipelineOptions& options = {});

}  // namespace lbubfl

#endif  // LBUBFL_PIPELINE_H_
