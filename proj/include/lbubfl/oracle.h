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

// Exhaustive solvers for tiny instances. Each enumerates every open subset
// and prices it with an exact min-cost flow, so results are optimal.

#ifndef LBUBFL_ORACLE_H_
#define LBUBFL_ORACLE_H_

#include <optional>

#include "lbubfl/cfl.h"
#include "lbubfl/core.h"
#include "lbubfl/transform.h"

namespace lbubfl {

inline constexpr int kOracleMaxFacilities = 12;

// Optimal LBUBFL solution, or nullopt when no open set admits loads in
// [L, U]. Throws kParameter above kOracleMaxFacilities facilities.
std::optional<Solution> ExactLbubfl(const Instance& inst);

// Optimal connection cost of I2 with loads in [L, inf) and free opening.
// Throws kParameter above the size cap and kInfeasible when fewer than L
// clients exist.
double ExactLbfl(const I2Instance& i2);

// Optimal capacitated solution. Throws kParameter above the size cap.
CflSolution ExactCfl(const CflInstance& icap);

}  // namespace lbubfl

#endif  // LBUBFL_ORACLE_H_
