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

// Capacitated facility location over the sites of a CflInstance.
//
// SolveCfl() is a first-improvement local search over open/close/swap moves
// where every candidate open set is priced by an exact transportation
// min-cost flow. Demand is integral, so shipments are integers.

#ifndef LBUBFL_CFL_H_
#define LBUBFL_CFL_H_

#include <optional>
#include <string>
#include <vector>

#include "lbubfl/transform.h"

namespace lbubfl {

struct CflSolution {
  std::vector<char> open;     // per site
  std::vector<int64_t> ship;  // ship[a * n + b]: demand of a served at b
  std::string solver = "local-search";

  int size() const { return static_cast<int>(open.size()); }
  int64_t Ship(int a, int b) const { return ship[a * size() + b]; }
  int64_t& Ship(int a, int b) { return ship[a * size() + b]; }
  int64_t Outflow(int b) const;  // total shipped from supply site b
};

struct CflOptions {
  double improvement = 1e-9;  // relative decrease required to accept a move
  int max_accepted_moves = 100000;
};

double CflCost(const CflInstance& icap, const CflSolution& sol);

// Names the first violated feasibility condition, or returns empty.
std::string CflInfeasibility(const CflInstance& icap, const CflSolution& sol);

// Cheapest shipment of all demand to the open sites; nullopt when the open
// capacity is insufficient.
std::optional<CflSolution> AssignToOpenSet(const CflInstance& icap,
                                           const std::vector<char>& open);

CflSolution SolveCfl(const CflInstance& icap, const CflOptions& options = {});

// Every open site with demand ends up serving all of it; cost does not
// increase under the metric. Closed sites are untouched.
CflSolution NormalizeSelfService(const CflInstance& icap, CflSolution sol);

}  // namespace lbubfl

#endif  // LBUBFL_CFL_H_
