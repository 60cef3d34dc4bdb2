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

#include <cmath>

#include "gtest/gtest.h"
#include "lbubfl/generator.h"
#include "lbubfl/oracle.h"
#include "testing.h"

namespace lbubfl {
namespace {

ErrorKind KindOf(const Instance& inst, const PipelineOptions& options = {}) {
  try {
    SolveLbubfl(inst, options);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInternal;
}

TEST(PipelineTest, T1MatchesOptimum) {
  Instance inst = testing::T1();
  PipelineResult r = SolveLbubfl(inst);
  EXPECT_EQ(r.Violations(), 0);
  EXPECT_EQ(r.bounds.lower_violations, 0);
  EXPECT_LE(r.bounds.max_load, static_cast<int>(std::ceil(2.5 * inst.upper())));
  std::optional<Solution> opt = ExactLbubfl(inst);
  ASSERT_TRUE(opt);
  EXPECT_NEAR(r.cost, Cost(inst, *opt), 1e-9);
  EXPECT_LE(r.lp_opt, r.cost + 1e-9);
}

TEST(PipelineTest, SingleTriCriteriaFacilitySkipsTrees) {
  // Every client sits on facility a; the LP opens only a.
  Instance inst = testing::LineInstance({0.0, 50.0}, {0.0, 0.0}, {0, 0, 0, 0},
                                        2, 4);
  PipelineResult r = SolveLbubfl(inst);
  EXPECT_FALSE(r.fix);
  EXPECT_FALSE(r.icap);
  EXPECT_EQ(r.solution.open, std::vector<int>{0});
  EXPECT_EQ(r.Violations(), 0);
}

TEST(PipelineTest, CheckInvariantsDoesNotChangeTheAnswer) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = RandomSuiteInstance(seed, {10, 60, 8});
    PipelineOptions checked;
    checked.check_invariants = true;
    PipelineResult a = SolveLbubfl(inst);
    PipelineResult b = SolveLbubfl(inst, checked);
    EXPECT_EQ(a.solution.open, b.solution.open) << seed;
    EXPECT_EQ(a.solution.assign, b.solution.assign) << seed;
  }
}

TEST(PipelineTest, PostFlowNeverRaisesCost) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = RandomSuiteInstance(seed, {10, 60, 8});
    PipelineOptions opts;
    opts.post_flow = true;
    PipelineResult r = SolveLbubfl(inst, opts);
    EXPECT_LE(r.cost, r.cost_before_post_flow + 1e-9) << seed;
    EXPECT_EQ(r.bounds.lower_violations, 0) << seed;
    EXPECT_EQ(r.upper_excess, 0) << seed;
  }
}

TEST(PipelineTest, FinalLoadsWithinRelaxedUpper) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = RandomSuiteInstance(seed, {12, 80, 10});
    PipelineResult r = SolveLbubfl(inst);
    EXPECT_EQ(r.Violations(), 0) << seed;
    EXPECT_EQ(r.bounds.min_load >= inst.lower(), true) << seed;
    EXPECT_LE(r.bounds.max_load, r.upper_limit) << seed;
    EXPECT_LE(r.upper_limit, static_cast<int64_t>(std::ceil(2.5 * inst.upper() - 1e-9)));
    EXPECT_NEAR(r.cost, Cost(inst, r.solution), 1e-9);
  }
}

TEST(PipelineTest, Errors) {
  Instance bad = Instance::FromMatrix({"a"}, {0.0}, {"x", "y"},
                                      {0, 1, 5, 1, 0, 1, 5, 1, 0}, 1, 2);
  EXPECT_EQ(KindOf(bad), ErrorKind::kMetric);

  PipelineOptions opts;
  opts.tri.ell = 2.0;
  EXPECT_EQ(KindOf(testing::T1(), opts), ErrorKind::kParameter);
  opts.tri.ell = 2.01;
  opts.delta = -1.0;
  EXPECT_EQ(KindOf(testing::T1(), opts), ErrorKind::kParameter);

  // Five clients, L = 3, U = 4: no number of open facilities fits.
  Instance counting = testing::LineInstance({0.0, 1.0}, {0, 0}, {0, 0, 0, 1, 1},
                                            3, 4);
  EXPECT_EQ(KindOf(counting), ErrorKind::kInfeasible);
}

}  // namespace
}  // namespace lbubfl
