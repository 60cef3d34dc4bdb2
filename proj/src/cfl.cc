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

#include "lbubfl/cfl.h"

#include <cassert>

#include "lbubfl/mcflow.h"

namespace lbubfl {

int64_t CflSolution::Outflow(int b) const {
  int64_t total = 0;
  for (int a = 0; a < size(); ++a) total += Ship(a, b);
  return total;
}

double CflCost(const CflInstance& icap, const CflSolution& sol) {
  double total = 0.0;
  for (int a = 0; a < icap.size(); ++a) {
    if (sol.open[a]) total += icap.sites[a].open_cost;
    for (int b = 0; b < icap.size(); ++b) {
      total += static_cast<double>(sol.Ship(a, b)) * icap.Distance(a, b);
    }
  }
  return total;
}

std::string CflInfeasibility(const CflInstance& icap, const CflSolution& sol) {
  const int n = icap.size();
  if (sol.size() != n || static_cast<int>(sol.ship.size()) != n * n) {
    return "solution shape does not match the instance";
  }
  for (int a = 0; a < n; ++a) {
    int64_t served = 0;
    for (int b = 0; b < n; ++b) {
      if (sol.Ship(a, b) < 0) return "negative shipment";
      if (sol.Ship(a, b) > 0 && !sol.open[b]) {
        return "site " + icap.sites[b].id + " ships while closed";
      }
      served += sol.Ship(a, b);
    }
    if (served != icap.sites[a].demand) {
      return "demand of site " + icap.sites[a].id + " not served exactly";
    }
  }
  for (int b = 0; b < n; ++b) {
    if (sol.Outflow(b) > icap.sites[b].capacity) {
      return "site " + icap.sites[b].id + " over capacity";
    }
  }
  return "";
}

std::optional<CflSolution> AssignToOpenSet(const CflInstance& icap,
                                           const std::vector<char>& open) {
  const int n = icap.size();
  int64_t capacity = 0;
  for (int b = 0; b < n; ++b) {
    if (open[b]) capacity += icap.sites[b].capacity;
  }
  const int64_t demand = icap.TotalDemand();
  if (capacity < demand) return std::nullopt;

  CflSolution sol;
  sol.open = open;
  sol.ship.assign(static_cast<size_t>(n) * n, 0);
  if (demand == 0) return sol;

  // Demand nodes [0, n), supply nodes [n, 2n), sink 2n.
  FlowNetwork net(2 * n + 1);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a) {
    if (icap.sites[a].demand == 0) continue;
    net.SetSupply(a, icap.sites[a].demand);
    for (int b = 0; b < n; ++b) {
      if (!open[b]) continue;
      net.AddArc(a, n + b, 0, icap.sites[a].demand, icap.Distance(a, b));
      pairs.push_back({a, b});
    }
  }
  for (int b = 0; b < n; ++b) {
    if (open[b]) net.AddArc(n + b, 2 * n, 0, icap.sites[b].capacity, 0.0);
  }
  net.SetSupply(2 * n, -demand);
  FlowResult flow = MinCostFlow(net);
  if (!flow.feasible) return std::nullopt;
  for (size_t k = 0; k < pairs.size(); ++k) {
    sol.Ship(pairs[k].first, pairs[k].second) = flow.flow[k];
  }
  return sol;
}

namespace {

// Closes open sites that ship nothing.
void DropIdle(const CflInstance& icap, CflSolution* sol) {
  for (int b = 0; b < icap.size(); ++b) {
    if (sol->open[b] && sol->Outflow(b) == 0) sol->open[b] = 0;
  }
}

}  // namespace

CflSolution SolveCfl(const CflInstance& icap, const CflOptions& options) {
  const int n = icap.size();
  std::vector<char> open(n, 1);
  std::optional<CflSolution> best = AssignToOpenSet(icap, open);
  if (!best) {
    throw Error(ErrorKind::kInternal, "capacitated instance has too little capacity");
  }
  double best_cost = CflCost(icap, *best);

  auto try_set = [&](const std::vector<char>& candidate) {
    std::optional<CflSolution> sol = AssignToOpenSet(icap, candidate);
    if (!sol) return false;
    double cost = CflCost(icap, *sol);
    if (cost < best_cost - options.improvement * std::max(1.0, best_cost)) {
      best = std::move(sol);
      best_cost = cost;
      assert(CflInfeasibility(icap, *best).empty());
      open = candidate;
      return true;
    }
    return false;
  };

  // Moves: close a (b < 0, a open), open a (a closed), swap a out for b in.
  int accepted = 0;
  bool improved = true;
  while (improved && accepted < options.max_accepted_moves) {
    improved = false;
    for (int a = 0; a < n && !improved; ++a) {
      std::vector<char> candidate = open;
      candidate[a] = !candidate[a];
      improved = try_set(candidate);
    }
    for (int a = 0; a < n && !improved; ++a) {
      if (!open[a]) continue;
      for (int b = 0; b < n && !improved; ++b) {
        if (open[b]) continue;
        std::vector<char> candidate = open;
        candidate[a] = 0;
        candidate[b] = 1;
        improved = try_set(candidate);
      }
    }
    if (improved) ++accepted;
  }
  DropIdle(icap, &*best);
  return *best;
}

CflSolution NormalizeSelfService(const CflInstance& icap, CflSolution sol) {
  const int n = icap.size();
  for (int i = 0; i < n; ++i) {
    if (!sol.open[i]) continue;
    const int64_t d = icap.sites[i].demand;
    while (sol.Ship(i, i) < d) {
      int k = -1;
      for (int b = 0; b < n && k < 0; ++b) {
        if (b != i && sol.Ship(i, b) > 0) k = b;
      }
      if (sol.Outflow(i) < icap.sites[i].capacity) {
        --sol.Ship(i, k);
        ++sol.Ship(i, i);
        continue;
      }
      // i is full, so it serves some other site j; j moves to k instead.
      int j = -1;
      for (int a = 0; a < n && j < 0; ++a) {
        if (a != i && sol.Ship(a, i) > 0) j = a;
      }
      if (k < 0 || j < 0) {
        throw Error(ErrorKind::kInternal, "self-service exchange has no partner");
      }
      --sol.Ship(j, i);
      ++sol.Ship(j, k);
      --sol.Ship(i, k);
      ++sol.Ship(i, i);
    }
  }
  return sol;
}

}  // namespace lbubfl
