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


#include "lbubfl/generator.h"

#include "gtest/gtest.h"
#include "lbubfl/io.h"

namespace lbubfl {
namespace {

TEST(GenerateTest, DeterministicForSeed) {
  GeneratorParams p;
  p.seed = 1;
  std::vector<Instance> a = GenerateInstances(p, 3);
  std::vector<Instance> b = GenerateInstances(p, 3);
  ASSERT_EQ(a.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(InstanceToJson(a[k]).dump(), InstanceToJson(b[k]).dump());
  }
  EXPECT_NE(InstanceToJson(a[0]).dump(), InstanceToJson(a[1]).dump());
}

TEST(GenerateTest, UnitSquareByDefault) {
  GeneratorParams p;
  for (const Instance& inst : GenerateInstances(p, 2)) {
    for (int q = 0; q < inst.num_points(); ++q) {
      EXPECT_GE(inst.point(q).x, 0.0);
      EXPECT_LE(inst.point(q).x, 1.0);
      EXPECT_GE(inst.point(q).y, 0.0);
      EXPECT_LE(inst.point(q).y, 1.0);
    }
  }
}

TEST(GenerateTest, RejectsInconsistentParameters) {
  GeneratorParams p;
  p.lower = 5;
  p.upper = 4;
  EXPECT_THROW(GenerateInstances(p, 1), Error);
  p.lower = 4;
  p.upper = 5;
  p.num_clients = 7;
  try {
    GenerateInstances(p, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParameter);
    EXPECT_NE(std::string(e.what()).find("4k <= 7 <= 5k"), std::string::npos);
  }
}

TEST(GenerateTest, Geometries) {
  GeneratorParams p;
  p.geometry = ParseGeometry("line");
  for (const Instance& inst : GenerateInstances(p, 1)) {
    for (int q = 0; q < inst.num_points(); ++q) EXPECT_EQ(inst.point(q).y, 0.0);
  }
  p.geometry = ParseGeometry("clustered");
  EXPECT_EQ(GenerateInstances(p, 2).size(), 2u);
  EXPECT_THROW(ParseGeometry("torus"), Error);
}

TEST(RandomSuiteTest, AlwaysCountingFeasible) {
  for (uint64_t seed = 1; seed <= 200; ++seed) {
    Instance inst = RandomSuiteInstance(seed);
    EXPECT_LE(inst.num_facilities(), 15);
    EXPECT_LE(inst.num_clients(), 120);
    EXPECT_LE(inst.lower(), inst.upper());
    EXPECT_TRUE(FeasibleOpenCount(inst.num_clients(), inst.num_facilities(),
                                  inst.lower(), inst.upper()));
  }
}

}  // namespace
}  // namespace lbubfl
