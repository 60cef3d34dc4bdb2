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

#include "lbubfl/mcflow.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

namespace lbubfl {

int64_t ScaleCost(double cost) { return std::llround(cost * kCostScale); }

int FlowNetwork::AddNode(int64_t supply) {
  supply_.push_back(supply);
  return num_nodes() - 1;
}

int FlowNetwork::AddArc(int from, int to, int64_t lower, int64_t upper,
                        double cost) {
  if (lower < 0 || upper < lower) {
    throw Error(ErrorKind::kInput, "arc bounds must satisfy 0 <= lower <= upper");
  }
  if (from < 0 || to < 0 || from >= num_nodes() || to >= num_nodes()) {
    throw Error(ErrorKind::kInput, "arc endpoint out of range");
  }
  arcs_.push_back({from, to, lower, upper, cost});
  return num_arcs() - 1;
}

namespace {

constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

// Residual graph with paired edges (e, e ^ 1).
class Residual {
 public:
  explicit Residual(int n) : head_(n, -1) {}

  int Add(int from, int to, int64_t cap, int64_t cost) {
    Push(from, to, cap, cost);
    Push(to, from, 0, -cost);
    return static_cast<int>(to_.size()) - 2;
  }

  int num_nodes() const { return static_cast<int>(head_.size()); }

  // Augments up to `want` units from s to t along shortest paths. Reduced
  // costs stay nonnegative because all residual costs start nonnegative.
  int64_t Augment(int s, int t, int64_t want, int64_t* total_cost) {
    const int n = num_nodes();
    std::vector<int64_t> potential(n, 0);
    std::vector<int64_t> dist(n);
    std::vector<int> via(n);
    int64_t sent = 0;
    using Item = std::pair<int64_t, int>;
    while (sent < want) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(via.begin(), via.end(), -1);
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
      dist[s] = 0;
      heap.push({0, s});
      while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d != dist[u]) continue;
        for (int e = head_[u]; e != -1; e = next_[e]) {
          if (cap_[e] <= 0) continue;
          int v = to_[e];
          int64_t nd = d + cost_[e] + potential[u] - potential[v];
          if (nd < dist[v]) {
            dist[v] = nd;
            via[v] = e;
            heap.push({nd, v});
          }
        }
      }
      if (dist[t] >= kInf) break;
      // Capping at dist[t] keeps reduced costs nonnegative for nodes that
      // were not settled.
      for (int v = 0; v < n; ++v) potential[v] += std::min(dist[v], dist[t]);
      int64_t push = want - sent;
      for (int v = t; v != s; v = to_[via[v] ^ 1]) {
        push = std::min(push, cap_[via[v]]);
      }
      for (int v = t; v != s; v = to_[via[v] ^ 1]) {
        cap_[via[v]] -= push;
        cap_[via[v] ^ 1] += push;
        *total_cost += push * cost_[via[v]];
      }
      sent += push;
    }
    return sent;
  }

  int64_t Flow(int e) const { return cap_[e ^ 1]; }

 private:
  void Push(int from, int to, int64_t cap, int64_t cost) {
    to_.push_back(to);
    cap_.push_back(cap);
    cost_.push_back(cost);
    next_.push_back(head_[from]);
    head_[from] = static_cast<int>(to_.size()) - 1;
  }

  std::vector<int> head_;
  std::vector<int> to_;
  std::vector<int> next_;
  std::vector<int64_t> cap_;
  std::vector<int64_t> cost_;
};

}  // namespace

FlowResult MinCostFlow(const FlowNetwork& net) {
  const int n = net.num_nodes();
  int64_t balance = 0;
  for (int64_t s : net.supplies()) balance += s;
  if (balance != 0) {
    throw Error(ErrorKind::kInput, "flow supplies must sum to zero");
  }

  // excess[v] > 0 must leave v through residual arcs.
  std::vector<int64_t> excess = net.supplies();
  std::vector<int64_t> base(net.num_arcs(), 0);
  std::vector<int64_t> scaled(net.num_arcs());
  int64_t cost = 0;
  Residual residual(n + 2);
  std::vector<int> edge(net.num_arcs());
  std::vector<bool> reversed(net.num_arcs(), false);
  for (int a = 0; a < net.num_arcs(); ++a) {
    const FlowArc& arc = net.arc(a);
    scaled[a] = ScaleCost(arc.cost);
    int64_t pre = arc.lower;
    int64_t room = arc.upper - arc.lower;
    if (scaled[a] < 0) {
      if (arc.upper >= kUnboundedCapacity) {
        throw Error(ErrorKind::kInput, "negative-cost arcs need a finite upper bound");
      }
      // Saturate, then allow cancellation at positive cost.
      pre = arc.upper;
      reversed[a] = true;
    }
    base[a] = pre;
    excess[arc.from] -= pre;
    excess[arc.to] += pre;
    cost += pre * scaled[a];
    if (reversed[a]) {
      edge[a] = residual.Add(arc.to, arc.from, room, -scaled[a]);
    } else {
      edge[a] = residual.Add(arc.from, arc.to, room, scaled[a]);
    }
  }

  const int source = n;
  const int sink = n + 1;
  int64_t need = 0;
  for (int v = 0; v < n; ++v) {
    if (excess[v] > 0) {
      residual.Add(source, v, excess[v], 0);
      need += excess[v];
    } else if (excess[v] < 0) {
      residual.Add(v, sink, -excess[v], 0);
    }
  }

  FlowResult result;
  int64_t sent = residual.Augment(source, sink, need, &cost);
  if (sent < need) return result;
  result.feasible = true;
  result.flow.resize(net.num_arcs());
  for (int a = 0; a < net.num_arcs(); ++a) {
    int64_t moved = residual.Flow(edge[a]);
    result.flow[a] = reversed[a] ? base[a] - moved : base[a] + moved;
  }
  result.scaled_cost = cost;
  result.cost = static_cast<double>(cost) / kCostScale;
  return result;
}

bool IsFeasibleFlow(const FlowNetwork& net, const std::vector<int64_t>& flow) {
  if (static_cast<int>(flow.size()) != net.num_arcs()) return false;
  std::vector<int64_t> net_out(net.num_nodes(), 0);
  for (int a = 0; a < net.num_arcs(); ++a) {
    const FlowArc& arc = net.arc(a);
    if (flow[a] < arc.lower || flow[a] > arc.upper) return false;
    net_out[arc.from] += flow[a];
    net_out[arc.to] -= flow[a];
  }
  for (int v = 0; v < net.num_nodes(); ++v) {
    if (net_out[v] != net.supply(v)) return false;
  }
  return true;
}

namespace {

// Client nodes [0, C), facility nodes [C, C + K), sink C + K.
std::vector<int> SolveBipartite(
    const Instance& inst, const std::vector<int>& open, int64_t lo, int64_t hi,
    const std::function<bool(int, int)>& allowed) {
  const int C = inst.num_clients();
  const int K = static_cast<int>(open.size());
  FlowNetwork net(C + K + 1);
  for (int j = 0; j < C; ++j) net.SetSupply(j, 1);
  net.SetSupply(C + K, -C);
  std::vector<std::pair<int, int>> arc_pair;
  for (int j = 0; j < C; ++j) {
    for (int k = 0; k < K; ++k) {
      if (!allowed(k, j)) continue;
      net.AddArc(j, C + k, 0, 1, inst.Cost(open[k], j));
      arc_pair.push_back({j, k});
    }
  }
  for (int k = 0; k < K; ++k) net.AddArc(C + k, C + K, lo, hi, 0.0);
  FlowResult flow = MinCostFlow(net);
  if (!flow.feasible) return {};
  std::vector<int> assign(C, -1);
  for (size_t a = 0; a < arc_pair.size(); ++a) {
    if (flow.flow[a] > 0) assign[arc_pair[a].first] = open[arc_pair[a].second];
  }
  return assign;
}

}  // namespace

std::vector<int> AssignWithBounds(const Instance& inst,
                                  const std::vector<int>& open, int64_t lo,
                                  int64_t hi) {
  if (inst.num_clients() == 0) return {};
  if (open.empty() || lo > hi) return {};
  return SolveBipartite(inst, open, lo, hi, [](int, int) { return true; });
}

std::vector<int> IntegralizeAssignment(const Instance& inst,
                                       const IntegralizeRequest& request) {
  constexpr double kSupportEps = 1e-9;
  const int K = static_cast<int>(request.open.size());
  if (static_cast<int>(request.fractional.size()) != K) {
    throw Error(ErrorKind::kInput, "one fractional row per open facility");
  }
  if (inst.num_clients() == 0) return {};
  int64_t lo = request.lower_bound_override >= 0
                   ? request.lower_bound_override
                   : static_cast<int64_t>(std::floor(request.lower_target + 1e-9));
  int64_t hi = request.upper_bound_override >= 0
                   ? request.upper_bound_override
                   : static_cast<int64_t>(std::ceil(request.upper_target - 1e-9));
  lo = std::max<int64_t>(lo, 0);
  std::vector<int> assign;
  if (K > 0 && lo <= hi) {
    assign = SolveBipartite(inst, request.open, lo, hi, [&](int k, int j) {
      return request.full_support || request.fractional[k][j] > kSupportEps;
    });
  }
  if (assign.empty()) {
    throw Error(ErrorKind::kInfeasible,
                "no integral assignment within the rounded load bounds");
  }
  return assign;
}

}  // namespace lbubfl
