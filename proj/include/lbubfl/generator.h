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

// Deterministic random instances. All randomness comes from one
// std::mt19937_64 seeded with the caller's 64-bit seed.

#ifndef LBUBFL_GENERATOR_H_
#define LBUBFL_GENERATOR_H_

#include <cstdint>
#include <string>
#include <vector>

#include "lbubfl/core.h"

namespace lbubfl {

enum class Geometry { kUniform, kClustered, kLine };

// Throws kParameter for an unknown name.
Geometry ParseGeometry(const std::string& name);
const char* GeometryName(Geometry geometry);

struct GeneratorParams {
  int num_facilities = 5;
  int num_clients = 20;
  int lower = 2;
  int upper = 5;
  uint64_t seed = 1;
  Geometry geometry = Geometry::kUniform;
  double max_open_cost = 1.0;  // costs uniform in [0, max_open_cost]
};

// Throws kParameter for L > U, nonpositive sizes, or when no k <= |F| has
// kL <= |C| <= kU.
std::vector<Instance> GenerateInstances(const GeneratorParams& params,
                                        int count);

// Random shape per seed: |F| in [2, max_facilities], |C| in
// [1, max_clients], L in [1, max_lower], U in [L, L + max_lower - 1],
// resampled until counting-feasible. Opening costs scale with a random
// factor in [0, 3].
struct SuiteParams {
  int max_facilities = 15;
  int max_clients = 120;
  int max_lower = 12;
};

Instance RandomSuiteInstance(uint64_t seed, const SuiteParams& params = {});

}  // namespace lbubfl

#endif  // LBUBFL_GENERATOR_H_
