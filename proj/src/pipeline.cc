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


#include "lbubfl/pipeline.h"

#include <chrono>
#include <cmath>
#include <sstream>

#include "lbubfl/lp.h"
#include "lbubfl/mcflow.h"

namespace lbubfl {

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>* out) : out_(out) {}

  void Lap(const char* stage) {
    auto now = std::chrono::steady_clock::now();
    out_->push_back(
        {stage, std::chrono::duration<double, std::milli>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTiming>* out_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void RequireMetric(const Instance& inst) {
  std::vector<MetricViolation> bad = ValidateMetric(inst);
  if (bad.empty()) return;
  const MetricViolation& v = bad.front();
  std::ostringstream msg;
  msg << bad.size() << " metric violation(s); first: ";
  switch (v.kind) {
    case MetricViolationKind::kDiagonal:
      msg << "nonzero diagonal at point " << v.a;
      break;
    case MetricViolationKind::kNegative:
      msg << "negative distance between points " << v.a << " and " << v.b;
      break;
    case MetricViolationKind::kSymmetry:
      msg << "asymmetric distance between points " << v.a << " and " << v.b;
      break;
    case MetricViolationKind::kTriangle:
      msg << "triangle inequality fails for points " << v.a << ", " << v.b
          << ", " << v.c;
      break;
  }
  throw Error(ErrorKind::kMetric, msg.str());
}

}  // namespace

int PipelineResult::Violations() const {
  int total = tri.checks.Total() + upper_excess + bounds.lower_violations;
  if (fix) total += fix->checks.Total();
  return total;
}

PipelineResult SolveLbubfl(const Instance& inst, const PipelineOptions& options) {
  ValidateTriCriteriaOptions(options.tri);
  if (options.delta && !(*options.delta > 0.0)) {
    throw Error(ErrorKind::kParameter, "delta must be positive");
  }
  RequireMetric(inst);
  RequireCountingFeasible(inst);

  PipelineResult out;
  StageClock clock(&out.timings);
  FractionalSolution frac = SolveRelaxation(inst);
  out.lp_opt = frac.objective;
  clock.Lap("lp");
  out.tri = BuildTriCriteria(inst, frac, options.tri);
  clock.Lap("tricriteria");

  out.i1 = ToI1(inst, out.tri);
  out.i2 = ToI2(*out.i1);
  if (out.i2->size() < 2) {
    // A single facility already holds every client, hence at least L.
    out.solution = out.tri.AsSolution();
  } else {
    out.delta = options.delta ? *options.delta : DefaultDelta(out.tri.measured_alpha);
    out.icap = ToIcap(*out.i2, out.delta);
    clock.Lap("transform");
    out.ascap = SolveCfl(*out.icap, options.cfl);
    out.normalized = NormalizeSelfService(*out.icap, *out.ascap);
    std::string bad = CflInfeasibility(*out.icap, *out.normalized);
    if (!bad.empty()) {
      throw Error(ErrorKind::kInternal, "capacitated solution infeasible: " + bad);
    }
    clock.Lap("cfl");
    out.fix = RunTreeFix(*out.i2, *out.icap, *out.normalized);
    out.solution = AssembleFinal(inst, *out.i2, *out.fix);
    clock.Lap("treefix");
  }

  const int U = inst.upper();
  out.upper_limit = static_cast<int64_t>(
      std::ceil((out.tri.measured_beta + 1.0) * U - 1e-9));
  out.cost_before_post_flow = Cost(inst, out.solution);
  if (options.post_flow) {
    std::vector<int> assign =
        AssignWithBounds(inst, out.solution.open, inst.lower(), out.upper_limit);
    Solution candidate{out.solution.open, assign};
    if (!assign.empty() && Cost(inst, candidate) < out.cost_before_post_flow) {
      out.solution = std::move(candidate);
    }
    clock.Lap("post-flow");
  }
  ValidateSolution(inst, out.solution);
  out.cost = Cost(inst, out.solution);
  out.bounds = CheckBounds(inst, out.solution, 1.0, 1.0);
  for (int i : out.solution.open) {
    if (out.bounds.loads[i] > out.upper_limit) ++out.upper_excess;
  }
  if (options.check_invariants && out.Violations() > 0) {
    std::ostringstream msg;
    msg << out.Violations() << " invariant violation(s): tri-criteria "
        << out.tri.checks.Total() << ", trees "
        << (out.fix ? out.fix->checks.Total() : 0) << ", lower "
        << out.bounds.lower_violations << ", above ceil((beta+1)U) "
        << out.upper_excess;
    throw Error(ErrorKind::kInternal, msg.str());
  }
  return out;
}

}  // namespace lbubfl
