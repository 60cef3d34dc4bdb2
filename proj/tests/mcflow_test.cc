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


#include "lbubfl/mcflow.h"

#include <random>

#include "gtest/gtest.h"
#include "lbubfl/tricriteria.h"
#include "testing.h"

namespace lbubfl {
namespace {

TEST(MinCostFlowTest, SinglePath) {
  FlowNetwork net(3);
  net.SetSupply(0, 2);
  net.SetSupply(2, -2);
  net.AddArc(0, 1, 0, 5, 1.5);
  net.AddArc(1, 2, 0, 5, 2.0);
  FlowResult r = MinCostFlow(net);
  ASSERT_TRUE(r.feasible);
  EXPECT_DOUBLE_EQ(r.cost, 7.0);
}

TEST(MinCostFlowTest, PrefersCheaperParallelArc) {
  FlowNetwork net(2);
  net.SetSupply(0, 3);
  net.SetSupply(1, -3);
  int cheap = net.AddArc(0, 1, 0, 2, 1.0);
  int dear = net.AddArc(0, 1, 0, 5, 4.0);
  FlowResult r = MinCostFlow(net);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.flow[cheap], 2);
  EXPECT_EQ(r.flow[dear], 1);
  EXPECT_DOUBLE_EQ(r.cost, 6.0);
}

TEST(MinCostFlowTest, LowerBoundForcesCirculation) {
  // Zero supplies; the lower bound on 0->1 forces a unit around the cycle.
  FlowNetwork net(2);
  int forced = net.AddArc(0, 1, 1, 3, 2.0);
  int back = net.AddArc(1, 0, 0, 3, 1.0);
  FlowResult r = MinCostFlow(net);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.flow[forced], 1);
  EXPECT_EQ(r.flow[back], 1);
  EXPECT_DOUBLE_EQ(r.cost, 3.0);
  EXPECT_TRUE(IsFeasibleFlow(net, r.flow));
}

TEST(MinCostFlowTest, NegativeCycleIsSaturated) {
  FlowNetwork net(2);
  int a = net.AddArc(0, 1, 0, 4, -3.0);
  int b = net.AddArc(1, 0, 0, 2, 1.0);
  FlowResult r = MinCostFlow(net);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.flow[a], 2);
  EXPECT_EQ(r.flow[b], 2);
  EXPECT_DOUBLE_EQ(r.cost, -4.0);
}

TEST(MinCostFlowTest, InfeasibleCapacity) {
  FlowNetwork net(2);
  net.SetSupply(0, 3);
  net.SetSupply(1, -3);
  net.AddArc(0, 1, 0, 2, 1.0);
  EXPECT_FALSE(MinCostFlow(net).feasible);
}

TEST(MinCostFlowTest, UnbalancedSuppliesThrow) {
  FlowNetwork net(2);
  net.SetSupply(0, 1);
  EXPECT_THROW(MinCostFlow(net), Error);
}

TEST(MinCostFlowTest, RejectsInvertedBounds) {
  FlowNetwork net(2);
  EXPECT_THROW(net.AddArc(0, 1, 3, 2, 0.0), Error);
}

// Random networks up to 8 nodes with bounds in [0, 4] and integer costs,
// negatives included, against exhaustive enumeration of flow vectors.
TEST(MinCostFlowTest, MatchesEnumeration) {
  std::mt19937_64 rng(2024);
  int feasible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int m = 1 + static_cast<int>(rng() % 7);
    FlowNetwork net(n);
    for (int e = 0; e < m; ++e) {
      int from = static_cast<int>(rng() % n);
      int to = static_cast<int>(rng() % n);
      if (from == to) to = (to + 1) % n;
      int64_t lo = rng() % 4 == 0 ? 1 : 0;
      int64_t hi = lo + static_cast<int64_t>(rng() % (5 - lo));
      double cost = static_cast<double>(static_cast<int>(rng() % 11) - 4);
      net.AddArc(from, to, lo, hi, cost);
    }
    int64_t s = static_cast<int64_t>(rng() % 4);
    int src = static_cast<int>(rng() % n);
    int dst = static_cast<int>(rng() % n);
    net.AddSupply(src, s);
    net.AddSupply(dst, -s);
    std::optional<double> expect = testing::BruteForceFlow(net);
    FlowResult got = MinCostFlow(net);
    ASSERT_EQ(got.feasible, expect.has_value()) << "trial " << trial;
    if (!expect) continue;
    ++feasible;
    EXPECT_TRUE(IsFeasibleFlow(net, got.flow));
    EXPECT_DOUBLE_EQ(got.cost, *expect) << "trial " << trial;
  }
  EXPECT_GT(feasible, 30);
}

TEST(ScaleCostTest, RoundsToFixedPoint) {
  EXPECT_EQ(ScaleCost(1.0), 1000000000);
  EXPECT_EQ(ScaleCost(-0.5), -500000000);
}

TEST(AssignWithBoundsTest, MatchesBruteForceOnTinyInstances) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = testing::RandomPlanar(&rng, 3, 6, 1 + trial % 2, 3, 0.0);
    std::vector<int> open = {0, 1, 2};
    std::vector<int> assign = AssignWithBounds(inst, open, inst.lower(), inst.upper());
    std::optional<double> brute = testing::BruteForceLbubfl(inst, true);
    ASSERT_EQ(!assign.empty(), brute.has_value());
    if (assign.empty()) continue;
    // Opening costs are zero and every facility is used.
    Solution sol{open, assign};
    EXPECT_NEAR(ConnectionCost(inst, sol), *brute, 1e-9);
  }
}

TEST(AssignWithBoundsTest, InfeasibleReturnsEmpty) {
  Instance inst = testing::T1();
  EXPECT_TRUE(AssignWithBounds(inst, {0}, 2, 3).empty());
}

TEST(IntegralizeTest, T1RoundsWithinTargets) {
  Instance inst = testing::T1();
  TriCriteriaSolution tri = BuildTriCriteria(inst);
  std::vector<int> loads = tri.AsSolution().Loads(inst.num_facilities());
  for (int i : tri.open) {
    EXPECT_GE(loads[i], tri.integral_lower);
    EXPECT_LE(loads[i], tri.integral_upper);
  }
}

TEST(IntegralizeTest, HalfSplitClientLandsOnEitherSide) {
  Instance inst = testing::LineInstance({0, 2}, {0, 0}, {0, 1, 2}, 1, 2);
  IntegralizeRequest req;
  req.open = {0, 1};
  req.fractional = {{1, 0.5, 0}, {0, 0.5, 1}};
  req.lower_target = 1.5;
  req.upper_target = 1.5;
  std::vector<int> assign = IntegralizeAssignment(inst, req);
  ASSERT_EQ(assign.size(), 3u);
  EXPECT_EQ(assign[0], 0);
  EXPECT_EQ(assign[2], 1);
}

TEST(IntegralizeTest, OffSupportIsInfeasible) {
  Instance inst = testing::LineInstance({0, 2}, {0, 0}, {0, 1}, 1, 2);
  IntegralizeRequest req;
  req.open = {0, 1};
  req.fractional = {{1, 1}, {0, 0}};
  req.lower_target = 1;
  req.upper_target = 2;
  EXPECT_THROW(IntegralizeAssignment(inst, req), Error);
  req.full_support = true;
  std::vector<int> assign = IntegralizeAssignment(inst, req);
  EXPECT_NE(assign[0], assign[1]);
}

}  // namespace
}  // namespace lbubfl
