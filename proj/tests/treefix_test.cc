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


#include "lbubfl/treefix.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "lbubfl/oracle.h"
#include "testing.h"

namespace lbubfl {
namespace {

// Clients are numbered consecutively across nodes.
I2Instance LineI2(const std::vector<double>& x, const std::vector<int>& count,
                  int lower) {
  I2Instance i2;
  i2.lower = lower;
  int next = 0;
  for (size_t a = 0; a < x.size(); ++a) {
    i2.facilities.push_back(static_cast<int>(a));
    i2.facility_ids.push_back("f" + std::to_string(a));
    i2.count.push_back(count[a]);
    std::vector<int> ids(count[a]);
    std::iota(ids.begin(), ids.end(), next);
    next += count[a];
    i2.clients.push_back(ids);
  }
  for (double a : x) {
    for (double b : x) i2.dist.push_back(std::abs(a - b));
  }
  return i2;
}

CflSolution SelfServing(const CflInstance& cap, const std::vector<char>& open) {
  CflSolution sol;
  sol.open = open;
  sol.ship.assign(static_cast<size_t>(cap.size()) * cap.size(), 0);
  for (int a = 0; a < cap.size(); ++a) {
    if (open[a]) sol.Ship(a, a) = cap.sites[a].demand;
  }
  return sol;
}

TEST(Type1Test, DemandDrivenMoves) {
  // L = 5; n = (4, 3, 4) so demands are (1, 2, 1). Site 2 serves everyone.
  I2Instance i2 = LineI2({0, 1, 2}, {4, 3, 4}, 5);
  CflInstance cap = ToIcap(i2, 0.5);
  CflSolution as = SelfServing(cap, {0, 0, 1});
  as.Ship(0, 2) = 1;
  as.Ship(1, 2) = 2;
  TreeFixChecks checks;
  Reassignment r = Type1Reassign(i2, cap, as, &checks);
  EXPECT_EQ(r.loads, (std::vector<int64_t>{5, 5, 1}));
  EXPECT_EQ(r.Rho(2, 0), 1);
  EXPECT_EQ(r.Rho(2, 1), 2);
  EXPECT_EQ(r.Rho(2, 2), 4);
  EXPECT_EQ(checks.Total(), 0);
  // Lowest ids of node 2 (ids 7..10) leave first.
  EXPECT_EQ(r.held[0], (std::vector<int>{0, 1, 2, 3, 7}));
  EXPECT_EQ(r.held[1], (std::vector<int>{4, 5, 6, 8, 9}));
  EXPECT_EQ(r.held[2], (std::vector<int>{10}));

  Partition part = PartitionP(r, 5);
  EXPECT_EQ(part.p, (std::vector<int>{0, 1}));
  EXPECT_EQ(part.p_bar, (std::vector<int>{2}));
}

TEST(Type1Test, SelfServiceKeepsDiagonal) {
  I2Instance i2 = LineI2({0, 1, 5}, {2, 6, 3}, 4);
  CflInstance cap = ToIcap(i2, 0.5);
  std::vector<char> open(cap.size(), 1);
  Reassignment r = Type1Reassign(i2, cap, SelfServing(cap, open));
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) EXPECT_EQ(r.Rho(a, b), a == b ? i2.count[a] : 0);
  }
}

TEST(Type1Test, OvershipThrows) {
  I2Instance i2 = LineI2({0, 1}, {1, 1}, 5);
  CflInstance cap = ToIcap(i2, 0.5);
  CflSolution as = SelfServing(cap, {0, 1});
  as.Ship(0, 1) = 4;
  EXPECT_THROW(Type1Reassign(i2, cap, as), Error);
}

TEST(BuildForestTest, LineRootPair) {
  I2Instance i2 = LineI2({0, 1, 3}, {1, 1, 1}, 5);
  FacilityForest f = BuildForest(i2, {0, 0, 0});
  EXPECT_EQ(f.eta, (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(f.partner[0], 1);
  EXPECT_EQ(f.partner[1], 0);
  EXPECT_EQ(f.roots, (std::vector<int>{0}));
  EXPECT_EQ(f.children[1], (std::vector<int>{2}));
  EXPECT_EQ(f.depth[2], 1);
}

TEST(BuildForestTest, SingleNodeUnderPRoot) {
  I2Instance i2 = LineI2({0, 1, 5}, {1, 1, 1}, 5);
  FacilityForest f = BuildForest(i2, {1, 0, 1});
  EXPECT_EQ(f.eta[1], 0);
  EXPECT_EQ(f.children[0], (std::vector<int>{1}));
  EXPECT_EQ(f.roots, (std::vector<int>{0, 2}));
  EXPECT_FALSE(f.IsRoot(1));
}

TEST(BuildForestTest, RandomStructure) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    I2Instance i2 = testing::RandomI2(&rng, 2 + static_cast<int>(rng() % 10), 3, 1, 3);
    std::vector<char> in_p(i2.size());
    for (char& c : in_p) c = rng() % 3 == 0;
    TreeFixChecks checks;
    FacilityForest f = BuildForest(i2, in_p, &checks);
    EXPECT_EQ(checks.forest_shape, 0);
    // Walking eta from any node reaches exactly one root.
    for (int a = 0; a < i2.size(); ++a) {
      int v = a;
      int steps = 0;
      while (!f.IsRoot(v)) {
        v = f.eta[v];
        ASSERT_LT(++steps, i2.size() + 1);
      }
      EXPECT_EQ(steps, f.depth[a]);
      int root = f.partner[v] >= 0 ? std::min(v, f.partner[v]) : v;
      EXPECT_EQ(std::count(f.roots.begin(), f.roots.end(), root), 1);
      if (!f.IsRoot(a)) {
        EXPECT_FALSE(in_p[a]);
        if (!in_p[f.eta[a]]) {
          EXPECT_LE(f.edge_cost[f.eta[a]], f.edge_cost[a] + 1e-12);
        }
      }
    }
  }
}

// Parent x at 0 with children b (1), e (-2), d (3), c (-4), a (5).
struct ProcessFixture {
  I2Instance i2;
  TreeState state;
};

ProcessFixture MakeProcess(const std::vector<int>& counts, int lower) {
  ProcessFixture p{LineI2({0, 1, -2, 3, -4, 5}, counts, lower), {}};
  const int k = p.i2.size();
  TreeState& s = p.state;
  s.i2 = &p.i2;
  s.lower = lower;
  FacilityForest& f = s.forest;
  f.in_p.assign(k, 0);
  f.in_p[0] = 1;
  f.eta.assign(k, 0);
  f.eta[0] = -1;
  f.partner.assign(k, -1);
  f.depth.assign(k, 1);
  f.depth[0] = 0;
  f.children.assign(k, {});
  f.children[0] = {1, 2, 3, 4, 5};
  f.edge_cost.assign(k, 0.0);
  for (int a = 1; a < k; ++a) f.edge_cost[a] = p.i2.Distance(0, a);
  f.roots = {0};
  s.held = p.i2.clients;
  s.pi.assign(counts.begin(), counts.end());
  s.opened = f.in_p;
  return p;
}

TEST(ProcessNodeTest, WorkedTrace) {
  // Node order x, b, e, d, c, a with L = 5: b opens, a (3) joins c (4),
  // c opens at 7, d (2) joins e (2), e sends 4 to x.
  ProcessFixture p = MakeProcess({5, 6, 2, 2, 4, 3}, 5);
  p.state.i2 = &p.i2;
  ProcessNode(&p.state, 0);
  const TreeState& s = p.state;
  EXPECT_TRUE(s.opened[1]);
  EXPECT_TRUE(s.opened[4]);
  EXPECT_EQ(s.count(4), 7);
  EXPECT_EQ(s.count(5), 0);
  EXPECT_FALSE(s.opened[2]);
  EXPECT_EQ(s.count(0), 9);
  EXPECT_EQ(s.count(2), 0);
  EXPECT_EQ(s.checks.Total(), 0);
  ASSERT_GE(s.events.size(), 5u);
  EXPECT_EQ(s.events.front().kind, "open");
  EXPECT_EQ(s.events.front().from, 1);
}

TEST(ProcessNodeTest, AllChildrenOpen) {
  ProcessFixture p = MakeProcess({5, 5, 6, 7, 5, 9}, 5);
  p.state.i2 = &p.i2;
  ProcessNode(&p.state, 0);
  for (int a = 1; a < 6; ++a) EXPECT_TRUE(p.state.opened[a]);
  EXPECT_EQ(p.state.count(0), 5);
}

TEST(ProcessNodeTest, SingleSmallChild) {
  I2Instance i2 = LineI2({0, 1}, {5, 3}, 5);
  TreeState s;
  s.i2 = &i2;
  s.lower = 5;
  s.forest = BuildForest(i2, {1, 0});
  s.held = i2.clients;
  s.pi = {5, 3};
  s.opened = {1, 0};
  ProcessNode(&s, 0);
  EXPECT_EQ(s.count(0), 8);
  EXPECT_EQ(s.count(1), 0);
}

TreeState RootPairState(const I2Instance& i2, int lower) {
  TreeState s;
  s.i2 = &i2;
  s.lower = lower;
  std::vector<char> in_p(i2.size(), 0);
  for (int a = 0; a < i2.size(); ++a) in_p[a] = i2.count[a] >= lower;
  s.forest = BuildForest(i2, in_p);
  s.held = i2.clients;
  s.pi.assign(i2.count.begin(), i2.count.end());
  s.opened = in_p;
  return s;
}

TEST(ResolveRootTest, OpenOne) {
  // Root-pair at 0 and 1; a leaf at 3 carries 9 clients to member 1.
  I2Instance i2 = LineI2({0, 1, 3}, {8, 6, 9}, 12);
  TreeState s = RootPairState(i2, 12);
  ASSERT_EQ(s.forest.partner[0], 1);
  ProcessNode(&s, 0);
  EXPECT_EQ(s.count(1), 15);
  ResolveRoot(&s, 0);
  EXPECT_TRUE(s.opened[1]);
  EXPECT_FALSE(s.opened[0]);
  EXPECT_EQ(s.count(1), 23);
}

TEST(ResolveRootTest, OpenBoth) {
  I2Instance i2 = LineI2({0, 1, 3}, {8, 6, 11}, 12);
  TreeState s = RootPairState(i2, 12);
  ProcessNode(&s, 0);
  ResolveRoot(&s, 0);
  EXPECT_TRUE(s.opened[0]);
  EXPECT_TRUE(s.opened[1]);
  EXPECT_EQ(s.count(1), 13);
  EXPECT_EQ(s.count(0), 12);
}

TEST(ResolveRootTest, ShipToNearestP) {
  // Pair {1, 2} collects 8 + 1 + 2 = 11 < 12 and ships to node 3 at 4;
  // node 4 at 20 is also in P but farther.
  I2Instance i2 = LineI2({0, 1, 1.5, 4, 20}, {2, 8, 1, 12, 12}, 12);
  TreeState s = RootPairState(i2, 12);
  ASSERT_EQ(s.forest.partner[1], 2);
  ProcessNode(&s, 1);
  ResolveRoot(&s, 1);
  EXPECT_EQ(s.count(3), 23);
  EXPECT_EQ(s.count(0) + s.count(1) + s.count(2), 0);
  EXPECT_FALSE(s.opened[1] || s.opened[2]);
}

TEST(ResolveRootTest, NoPIsInfeasible) {
  I2Instance i2 = LineI2({0, 1, 10, 11}, {2, 2, 2, 2}, 5);
  TreeState s = RootPairState(i2, 5);
  try {
    ResolveRoot(&s, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInfeasible);
  }
}

TEST(AssembleFinalTest, EmptyPBarKeepsType1Outcome) {
  I2Instance i2 = LineI2({0, 4}, {5, 6}, 5);
  Instance inst = testing::InstanceForI2(i2, 10);
  CflInstance cap = ToIcap(i2, 0.5);
  TreeFixResult fix = RunTreeFix(i2, cap, SelfServing(cap, std::vector<char>(cap.size(), 1)));
  EXPECT_TRUE(fix.partition.p_bar.empty());
  EXPECT_TRUE(fix.events.empty());
  Solution sol = AssembleFinal(inst, i2, fix);
  EXPECT_EQ(sol.open, (std::vector<int>{0, 1}));
  EXPECT_EQ(sol.Loads(2), (std::vector<int>{5, 6}));
}

TEST(AssembleFinalTest, LowerViolationIsHardFailure) {
  I2Instance i2 = LineI2({0, 4}, {5, 2}, 5);
  Instance inst = testing::InstanceForI2(i2, 10);
  TreeFixResult fix;
  fix.opened = {1, 1};
  fix.final_held = i2.clients;
  try {
    AssembleFinal(inst, i2, fix);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInternal);
  }
}

// Counts above L/2 mirror a tri-criteria solution with measured alpha > 1/2.
TEST(RunTreeFixTest, RandomInvariants) {
  std::mt19937_64 rng(31);
  int with_trees = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int L = 1 + static_cast<int>(rng() % 8);
    const int k = 2 + static_cast<int>(rng() % 9);
    I2Instance i2 = testing::RandomI2(&rng, k, L, L / 2 + 1, 3 * L);
    Instance inst = testing::InstanceForI2(i2, 1000);
    CflInstance cap = ToIcap(i2, 0.05 + 0.7 * (rng() % 100) / 100.0);
    CflSolution as = cap.size() <= 10 && rng() % 2 ? ExactCfl(cap) : SolveCfl(cap);
    as = NormalizeSelfService(cap, as);
    TreeFixResult fix = RunTreeFix(i2, cap, as);
    EXPECT_EQ(fix.checks.Total(), 0) << "trial " << trial;
    if (!fix.partition.p_bar.empty()) ++with_trees;
    Solution sol = AssembleFinal(inst, i2, fix);
    ValidateSolution(inst, sol);
    std::vector<int> loads = sol.Loads(k);
    for (int i : sol.open) EXPECT_GE(loads[i], L);
    // Observation: P members end open.
    for (int a : fix.partition.p) EXPECT_TRUE(fix.opened[a]);
  }
  EXPECT_GT(with_trees, 100);
}

}  // namespace
}  // namespace lbubfl
