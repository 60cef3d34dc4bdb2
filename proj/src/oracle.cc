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


#include "lbubfl/oracle.h"

#include <limits>
#include <string>

#include "lbubfl/mcflow.h"

namespace lbubfl {

namespace {

void RequireSize(int n, const char* what) {
  if (n > kOracleMaxFacilities) {
    throw Error(ErrorKind::kParameter,
                std::string(what) + " oracle is limited to " +
                    std::to_string(kOracleMaxFacilities) + " facilities, got " +
                    std::to_string(n));
  }
}

}  // namespace

std::optional<Solution> ExactLbubfl(const Instance& inst) {
  const int F = inst.num_facilities();
  const int C = inst.num_clients();
  RequireSize(F, "LBUBFL");
  if (C == 0) return Solution{};
  std::optional<Solution> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (uint32_t mask = 1; mask < (1u << F); ++mask) {
    const int k = __builtin_popcount(mask);
    if (static_cast<int64_t>(k) * inst.lower() > C ||
        static_cast<int64_t>(k) * inst.upper() < C) {
      continue;
    }
    std::vector<int> open;
    double opening = 0.0;
    for (int i = 0; i < F; ++i) {
      if (mask >> i & 1) {
        open.push_back(i);
        opening += inst.open_cost(i);
      }
    }
    if (opening >= best_cost) continue;
    std::vector<int> assign =
        AssignWithBounds(inst, open, inst.lower(), inst.upper());
    if (assign.empty()) continue;
    Solution sol{open, assign};
    double cost = Cost(inst, sol);
    if (cost < best_cost) {
      best_cost = cost;
      best = std::move(sol);
    }
  }
  return best;
}

double ExactLbfl(const I2Instance& i2) {
  const int k = i2.size();
  RequireSize(k, "LBFL");
  const int64_t total = i2.num_clients();
  if (total == 0) return 0.0;
  if (total < i2.lower) {
    throw Error(ErrorKind::kInfeasible, "fewer clients than the lower bound");
  }
  double best = std::numeric_limits<double>::infinity();
  for (uint32_t mask = 1; mask < (1u << k); ++mask) {
    const int64_t m = __builtin_popcount(mask);
    if (m * i2.lower > total) continue;
    // Groups [0, k), open members [k, 2k), sink 2k.
    FlowNetwork net(2 * k + 1);
    for (int a = 0; a < k; ++a) {
      net.SetSupply(a, i2.count[a]);
      for (int b = 0; b < k; ++b) {
        if (mask >> b & 1) net.AddArc(a, k + b, 0, i2.count[a], i2.Distance(a, b));
      }
    }
    for (int b = 0; b < k; ++b) {
      if (mask >> b & 1) net.AddArc(k + b, 2 * k, i2.lower, total, 0.0);
    }
    net.SetSupply(2 * k, -total);
    FlowResult flow = MinCostFlow(net);
    if (!flow.feasible) continue;
    double cost = 0.0;
    for (int e = 0; e < net.num_arcs(); ++e) {
      cost += static_cast<double>(flow.flow[e]) * net.arc(e).cost;
    }
    best = std::min(best, cost);
  }
  return best;
}

CflSolution ExactCfl(const CflInstance& icap) {
  const int n = icap.size();
  RequireSize(n, "CFL");
  std::optional<CflSolution> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<char> open(n, 0);
    double opening = 0.0;
    for (int a = 0; a < n; ++a) {
      if (mask >> a & 1) {
        open[a] = 1;
        opening += icap.sites[a].open_cost;
      }
    }
    if (opening >= best_cost) continue;
    std::optional<CflSolution> sol = AssignToOpenSet(icap, open);
    if (!sol) continue;
    double cost = CflCost(icap, *sol);
    if (cost < best_cost) {
      best_cost = cost;
      best = std::move(sol);
    }
  }
  if (!best) {
    throw Error(ErrorKind::kInfeasible, "capacitated instance has too little capacity");
  }
  best->solver = "exact";
  return *best;
}

}  // namespace lbubfl
