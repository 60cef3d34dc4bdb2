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


#include "lbubfl/transform.h"

#include <algorithm>

#include "gtest/gtest.h"
#include "testing.h"

namespace lbubfl {
namespace {

using testing::LineInstance;

TriCriteriaSolution Assigned(std::vector<int> open, std::vector<int> assign) {
  TriCriteriaSolution t;
  t.open = std::move(open);
  t.assign = std::move(assign);
  return t;
}

// Hand-built I2 on a line at the given positions.
I2Instance LineI2(const std::vector<double>& x, const std::vector<int>& count,
                  int lower) {
  I2Instance i2;
  i2.lower = lower;
  int next = 0;
  for (size_t a = 0; a < x.size(); ++a) {
    i2.facilities.push_back(static_cast<int>(a));
    i2.facility_ids.push_back("f" + std::to_string(a));
    i2.count.push_back(count[a]);
    std::vector<int> ids;
    // Descending ids, so the split must sort before picking the lowest.
    for (int q = count[a] - 1; q >= 0; --q) ids.push_back(next + q);
    next += count[a];
    i2.clients.push_back(ids);
  }
  for (double a : x) {
    for (double b : x) i2.dist.push_back(std::abs(a - b));
  }
  return i2;
}

TEST(ToI1Test, AllOnOneFacility) {
  Instance inst = LineInstance({0, 5}, {2, 3}, {1, 2, 3}, 1, 3);
  I1Instance i1 = ToI1(inst, Assigned({1}, {1, 1, 1}));
  ASSERT_EQ(i1.clients_at.size(), 1u);
  EXPECT_EQ(i1.clients_at[0].location, 1);
  EXPECT_EQ(i1.clients_at[0].count, 3);
  EXPECT_DOUBLE_EQ(i1.open_cost1[0], 2.0);
  EXPECT_DOUBLE_EQ(i1.open_cost1[1], 0.0);
  EXPECT_TRUE(i1.InFt(1));
  EXPECT_FALSE(i1.InFt(0));
}

TEST(ToI1Test, RelocatedDistances) {
  Instance inst = LineInstance({0, 5}, {2, 3}, {1, 4}, 1, 3);
  I1Instance i1 = ToI1(inst, Assigned({0, 1}, {0, 1}));
  Instance moved = i1.AsInstance();
  EXPECT_DOUBLE_EQ(moved.Cost(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(moved.Cost(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(moved.ClientDistance(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(moved.open_cost(1), 0.0);
  EXPECT_TRUE(ValidateMetric(moved).empty());
}

TEST(ToI1Test, ConservesClients) {
  Instance inst = testing::T1();
  I1Instance i1 = ToI1(inst, Assigned({0, 2}, {0, 0, 0, 2, 2, 2}));
  int total = 0;
  for (const ColocatedClients& g : i1.clients_at) total += g.count;
  EXPECT_EQ(total, 6);
  I2Instance i2 = ToI2(i1);
  EXPECT_EQ(i2.size(), 2);
  EXPECT_EQ(i2.num_clients(), 6);
  EXPECT_DOUBLE_EQ(i2.Distance(0, 1), 2.0);
  EXPECT_EQ(i2.clients[1], (std::vector<int>{3, 4, 5}));
}

TEST(ToI1Test, RejectsPartialAssignment) {
  Instance inst = testing::T1();
  EXPECT_THROW(ToI1(inst, Assigned({0}, {0, 0})), Error);
}

TEST(ToIcapTest, SmallSite) {
  I2Instance i2 = LineI2({0, 2}, {3, 4}, 4);
  CflInstance cap = ToIcap(i2, 0.5);
  ASSERT_EQ(cap.size(), 2);
  EXPECT_EQ(cap.sites[0].role, SiteRole::kSmall);
  EXPECT_EQ(cap.sites[0].demand, 1);
  EXPECT_EQ(cap.sites[0].capacity, 4);
  EXPECT_DOUBLE_EQ(cap.sites[0].nn_dist, 2.0);
  EXPECT_DOUBLE_EQ(cap.sites[0].open_cost, 0.5 * 3 * 2.0);
  // n = L is still small.
  EXPECT_EQ(cap.sites[1].role, SiteRole::kSmall);
  EXPECT_EQ(cap.sites[1].demand, 0);
  EXPECT_EQ(cap.sites[1].capacity, 4);
}

TEST(ToIcapTest, BigSiteSplits) {
  I2Instance i2 = LineI2({0, 3}, {7, 2}, 4);
  CflInstance cap = ToIcap(i2, 0.25);
  ASSERT_EQ(cap.size(), 3);
  const CflSite& primary = cap.sites[0];
  const CflSite& free = cap.sites[1];
  EXPECT_EQ(primary.role, SiteRole::kBigPrimary);
  EXPECT_EQ(primary.capacity, 4);
  EXPECT_EQ(primary.demand, 0);
  EXPECT_DOUBLE_EQ(primary.open_cost, 0.25 * 4 * 3.0);
  EXPECT_EQ(free.role, SiteRole::kBigFree);
  EXPECT_EQ(free.capacity, 3);
  EXPECT_EQ(free.demand, 0);
  EXPECT_DOUBLE_EQ(free.open_cost, 0.0);
  EXPECT_EQ(primary.clients, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(free.clients.size(), 3u);
  // Split sites are co-located.
  EXPECT_DOUBLE_EQ(cap.Distance(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(cap.Distance(0, 2), cap.Distance(1, 2));
}

TEST(ToIcapTest, TableInvariants) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int L = 1 + static_cast<int>(rng() % 6);
    I2Instance i2 = testing::RandomI2(&rng, 2 + static_cast<int>(rng() % 6), L, 1, 3 * L);
    CflInstance cap = ToIcap(i2, 0.3);
    int64_t clients = 0;
    for (const CflSite& s : cap.sites) {
      EXPECT_LE(s.demand, s.capacity);
      clients += static_cast<int64_t>(s.clients.size());
      if (s.role != SiteRole::kSmall) {
        EXPECT_EQ(s.demand, 0);
      } else {
        EXPECT_EQ(s.demand + static_cast<int64_t>(s.clients.size()), L);
      }
    }
    EXPECT_EQ(clients, i2.num_clients());
    // A self-serving all-open solution is always feasible.
    EXPECT_GE(cap.TotalCapacity(), cap.TotalDemand());
  }
}

TEST(ToIcapTest, Errors) {
  try {
    ToIcap(LineI2({0}, {3}, 2), 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParameter);
  }
  EXPECT_THROW(ToIcap(LineI2({0, 1}, {3, 0}, 2), 0.5), Error);
  EXPECT_THROW(ToIcap(LineI2({0, 1}, {3, 3}, 2), 0.0), Error);
}

TEST(DefaultDeltaTest, Values) {
  EXPECT_DOUBLE_EQ(DefaultDelta(1.0), 0.75);
  EXPECT_NEAR(DefaultDelta(0.75), 4.0 / 7.0, 1e-15);
  const double a = 1 - 1 / 2.01;
  EXPECT_NEAR(DefaultDelta(a), (6 * a - 3) / (2 * a * a + 2 * a), 1e-15);
  EXPECT_DOUBLE_EQ(DefaultDelta(2.5), 0.75);
  try {
    DefaultDelta(0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAlphaAbort);
  }
}

TEST(NearestOtherTest, TiesGoToLowerIndex) {
  I2Instance i2 = LineI2({0, 1, 2}, {1, 1, 1}, 1);
  EXPECT_EQ(NearestOther(i2), (std::vector<int>{1, 0, 1}));
}

}  // namespace
}  // namespace lbubfl
