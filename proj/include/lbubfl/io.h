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

// JSON encoding of instances, solutions and intermediate stages.
//
// Instance: {version, L, U, facilities:[{id, cost, x?, y?}],
//            clients:[{id, x?, y?}], matrix?}
// Solution: {open:[ids], assign:{client: facility}, cost, min_load, max_load}
// Intermediate stages carry a "stage" tag naming the producer.

#ifndef LBUBFL_IO_H_
#define LBUBFL_IO_H_

#include <string>

#include "lbubfl/cfl.h"
#include "lbubfl/core.h"
#include "lbubfl/transform.h"
#include "lbubfl/treefix.h"
#include "lbubfl/tricriteria.h"
#include "json.hpp"

namespace lbubfl {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// All readers throw kInput on malformed documents.
Instance InstanceFromJson(const Json& doc);
Json InstanceToJson(const Instance& inst);

Solution SolutionFromJson(const Instance& inst, const Json& doc);
Json SolutionToJson(const Instance& inst, const Solution& sol);

Json TriCriteriaToJson(const Instance& inst, const TriCriteriaSolution& tri);
Json I1ToJson(const I1Instance& i1);
Json I2ToJson(const I2Instance& i2);
Json CflInstanceToJson(const CflInstance& icap);
Json CflSolutionToJson(const CflInstance& icap, const CflSolution& sol);
// Forest edges, type-1 loads and the ordered event log.
Json TreeFixToJson(const I2Instance& i2, const TreeFixResult& fix);

Json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const Json& doc);

}  // namespace lbubfl

#endif  // LBUBFL_IO_H_
