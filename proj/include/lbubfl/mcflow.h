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

// Min-cost integral flow with arc lower and upper bounds.
//
// Lower bounds are removed by pre-sending them and shifting node excess.
// Negative-cost arcs are pre-saturated. The remaining problem is solved by
// successive shortest paths (Dijkstra with node potentials) from a super
// source to a super sink. Costs are compared exactly: every real arc cost is
// rounded to a fixed-point integer with kCostScale units per unit cost.

#ifndef LBUBFL_MCFLOW_H_
#define LBUBFL_MCFLOW_H_

#include <cstdint>
#include <vector>

#include "lbubfl/core.h"

namespace lbubfl {

inline constexpr double kCostScale = 1e9;
inline constexpr int64_t kUnboundedCapacity = int64_t{1} << 40;

int64_t ScaleCost(double cost);

struct FlowArc {
  int from = 0;
  int to = 0;
  int64_t lower = 0;
  int64_t upper = 0;
  double cost = 0.0;
};

class FlowNetwork {
 public:
  explicit FlowNetwork(int num_nodes = 0) : supply_(num_nodes, 0) {}

  int AddNode(int64_t supply = 0);
  // Returns the arc index. Throws kInput if lower > upper or lower < 0.
  int AddArc(int from, int to, int64_t lower, int64_t upper, double cost);
  void SetSupply(int node, int64_t supply) { supply_[node] = supply; }
  void AddSupply(int node, int64_t delta) { supply_[node] += delta; }

  int num_nodes() const { return static_cast<int>(supply_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  const FlowArc& arc(int a) const { return arcs_[a]; }
  const std::vector<FlowArc>& arcs() const { return arcs_; }
  int64_t supply(int node) const { return supply_[node]; }
  const std::vector<int64_t>& supplies() const { return supply_; }

 private:
  std::vector<FlowArc> arcs_;
  std::vector<int64_t> supply_;
};

struct FlowResult {
  bool feasible = false;
  std::vector<int64_t> flow;  // per arc
  int64_t scaled_cost = 0;    // sum of flow * ScaleCost(cost)
  double cost = 0.0;          // scaled_cost / kCostScale
};

// Throws kInput when supplies do not sum to zero.
FlowResult MinCostFlow(const FlowNetwork& net);

// Recomputes conservation and bounds; used by tests and assertions.
bool IsFeasibleFlow(const FlowNetwork& net, const std::vector<int64_t>& flow);

// One row per open facility: fractional[k][j] is the mass of client j on
// open[k]. Arcs exist only on the fractional support unless `full_support`.
struct IntegralizeRequest {
  std::vector<int> open;
  std::vector<std::vector<double>> fractional;
  double lower_target = 0.0;
  double upper_target = 0.0;
  bool full_support = false;
  // Integer bounds override the outward rounding of the targets when set.
  int lower_bound_override = -1;
  int upper_bound_override = -1;
};

// Each client goes to exactly one open facility, each open load lies in
// [floor(lower_target), ceil(upper_target)], and the connection cost is
// minimal over that polytope. Throws kInfeasible when no such assignment
// exists on the chosen support.
std::vector<int> IntegralizeAssignment(const Instance& inst,
                                       const IntegralizeRequest& request);

// Cheapest assignment of all clients to `open` with loads in [lo, hi].
// Returns an empty vector when infeasible.
std::vector<int> AssignWithBounds(const Instance& inst,
                                  const std::vector<int>& open, int64_t lo,
                                  int64_t hi);

}  // namespace lbubfl

#endif  // LBUBFL_MCFLOW_H_
