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

#include "lbubfl/treefix.h"

#include <algorithm>
#include <sstream>

namespace lbubfl {

int TreeFixChecks::Total() const {
  return claim_out + claim_in + observation + forest_shape + non_root_2l +
         sibling + edge_l + p_root;
}

Reassignment Type1Reassign(const I2Instance& i2, const CflInstance& icap,
                           const CflSolution& ascap, TreeFixChecks* checks) {
  const int k = i2.size();
  const int n = icap.size();
  const int64_t L = icap.lower;
  Reassignment out;
  out.size = k;
  out.rho1.assign(static_cast<size_t>(k) * k, 0);
  for (int a = 0; a < k; ++a) out.rho1[a * k + a] = i2.count[a];

  std::vector<std::vector<int>> pool(n);  // clients still at each site
  for (int s = 0; s < n; ++s) {
    pool[s] = icap.sites[s].clients;
    std::sort(pool[s].begin(), pool[s].end());
  }
  std::vector<std::vector<int>> incoming(k);
  for (int t = 0; t < n; ++t) {
    if (icap.sites[t].role != SiteRole::kSmall) continue;
    const int target = icap.sites[t].origin;
    for (int s = 0; s < n; ++s) {
      const int source = icap.sites[s].origin;
      const int64_t amount = ascap.Ship(t, s);
      if (source == target || amount == 0) continue;
      if (static_cast<int64_t>(pool[s].size()) < amount) {
        throw Error(ErrorKind::kInternal,
                    "site " + icap.sites[s].id + " ships more than it holds");
      }
      // Lowest ids leave first.
      incoming[target].insert(incoming[target].end(), pool[s].begin(),
                              pool[s].begin() + amount);
      pool[s].erase(pool[s].begin(), pool[s].begin() + amount);
      out.rho1[source * k + target] += amount;
    }
  }
  out.held.assign(k, {});
  for (int s = 0; s < n; ++s) {
    std::vector<int>& h = out.held[icap.sites[s].origin];
    h.insert(h.end(), pool[s].begin(), pool[s].end());
  }
  out.loads.assign(k, 0);
  for (int a = 0; a < k; ++a) {
    std::vector<int>& h = out.held[a];
    h.insert(h.end(), incoming[a].begin(), incoming[a].end());
    std::sort(h.begin(), h.end());
    out.loads[a] = static_cast<int64_t>(h.size());
  }

  if (checks != nullptr) {
    for (int a = 0; a < k; ++a) {
      int64_t sent = 0;
      int64_t received = 0;
      for (int b = 0; b < k; ++b) {
        if (b == a) continue;
        sent += out.Rho(a, b);
        received += out.Rho(b, a);
      }
      if (sent > i2.count[a]) ++checks->claim_out;
      if (i2.count[a] + received > std::max<int64_t>(L, i2.count[a])) {
        ++checks->claim_in;
      }
    }
    for (int s = 0; s < n; ++s) {
      const CflSite& site = icap.sites[s];
      bool watched = site.role == SiteRole::kSmall ||
                     site.role == SiteRole::kBigPrimary;
      if (watched && !ascap.open[s] && out.loads[site.origin] < L) {
        ++checks->observation;
      }
    }
  }
  return out;
}

Partition PartitionP(const Reassignment& reass, int lower) {
  Partition part;
  for (int a = 0; a < reass.size; ++a) {
    (reass.loads[a] >= lower ? part.p : part.p_bar).push_back(a);
  }
  return part;
}

FacilityForest BuildForest(const I2Instance& i2, const std::vector<char>& in_p,
                           TreeFixChecks* checks) {
  const int k = i2.size();
  FacilityForest forest;
  forest.in_p = in_p;
  forest.eta.assign(k, -1);
  forest.partner.assign(k, -1);
  forest.depth.assign(k, 0);
  forest.children.assign(k, {});
  forest.edge_cost.assign(k, 0.0);
  bool any_pbar = std::any_of(in_p.begin(), in_p.end(), [](char c) { return !c; });
  if (any_pbar && k < 2) {
    throw Error(ErrorKind::kParameter, "facility trees need at least two facilities");
  }
  std::vector<int> nearest = k >= 2 ? NearestOther(i2) : std::vector<int>(k, -1);
  for (int a = 0; a < k; ++a) {
    if (in_p[a]) continue;
    forest.eta[a] = nearest[a];
    forest.edge_cost[a] = i2.Distance(a, nearest[a]);
  }
  for (int a = 0; a < k; ++a) {
    const int b = forest.eta[a];
    if (b >= 0 && !in_p[b] && forest.eta[b] == a) forest.partner[a] = b;
  }
  for (int a = 0; a < k; ++a) {
    if (forest.IsRoot(a)) {
      if (in_p[a] || a < forest.partner[a]) forest.roots.push_back(a);
      continue;
    }
    forest.children[forest.eta[a]].push_back(a);
    int steps = 0;
    for (int v = a; !forest.IsRoot(v); v = forest.eta[v]) {
      if (++steps > k) {
        throw Error(ErrorKind::kInternal, "nearest-neighbour walk has a long cycle");
      }
    }
    forest.depth[a] = steps;
  }
  if (checks != nullptr) {
    for (int a = 0; a < k; ++a) {
      if (forest.IsRoot(a)) continue;
      const int p = forest.eta[a];
      if (!in_p[p] && forest.edge_cost[p] > forest.edge_cost[a] * (1 + 1e-12)) {
        ++checks->forest_shape;
      }
    }
  }
  return forest;
}

namespace {

void Move(TreeState* s, int from, int to, int count, const char* kind) {
  std::vector<int>& src = s->held[from];
  std::vector<int>& dst = s->held[to];
  // Highest ids leave when only part of a node moves.
  dst.insert(dst.end(), src.end() - count, src.end());
  src.erase(src.end() - count, src.end());
  std::sort(dst.begin(), dst.end());
  s->events.push_back({kind, from, to, count});
}

void Open(TreeState* s, int a) {
  s->opened[a] = 1;
  s->events.push_back({"open", a, a, s->count(a)});
}

}  // namespace

void ProcessNode(TreeState* s, int x) {
  const FacilityForest& f = s->forest;
  const int L = s->lower;
  std::vector<int> kids = f.children[x];
  if (f.partner[x] >= 0) {
    const std::vector<int>& more = f.children[f.partner[x]];
    kids.insert(kids.end(), more.begin(), more.end());
  }
  std::sort(kids.begin(), kids.end());
  std::vector<int> rest;
  for (int y : kids) {
    if (s->count(y) >= L) {
      Open(s, y);
    } else {
      rest.push_back(y);
    }
  }
  if (rest.empty()) return;
  // Farthest from the parent first; lower index first on ties.
  std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
    return f.edge_cost[a] > f.edge_cost[b];
  });
  for (size_t i = 0; i + 1 < rest.size(); ++i) {
    const int y = rest[i];
    const int next = rest[i + 1];
    if (s->count(y) >= L) {
      Open(s, y);
      continue;
    }
    const int amount = s->count(y);
    if (amount > L) ++s->checks.edge_l;
    if (s->i2->Distance(y, next) > 3 * f.edge_cost[y] * (1 + 1e-9) + 1e-12) {
      ++s->checks.sibling;
    }
    Move(s, y, next, amount, "sibling");
    if (s->count(next) > 2 * L) ++s->checks.non_root_2l;
  }
  const int last = rest.back();
  if (s->count(last) >= L) {
    Open(s, last);
  } else {
    const int parent = f.eta[last];
    const int amount = s->count(last);
    if (amount > L) ++s->checks.edge_l;
    Move(s, last, parent, amount, "parent");
    if (!f.IsRoot(parent) && s->count(parent) > 2 * L) ++s->checks.non_root_2l;
  }
  if (f.in_p[x] && s->count(x) > s->pi[x] + L) ++s->checks.p_root;
}

void ResolveRoot(TreeState* s, int root) {
  const FacilityForest& f = s->forest;
  if (f.in_p[root]) return;
  const int L = s->lower;
  int r1 = root;
  int r2 = f.partner[root];
  if (r2 < 0) {
    throw Error(ErrorKind::kInternal, "root is neither in P nor a root-pair");
  }
  if (r2 < r1) std::swap(r1, r2);
  const int total = s->count(r1) + s->count(r2);
  if (total == 0) return;
  const int big = s->count(r2) > s->count(r1) ? r2 : r1;
  const int small = big == r1 ? r2 : r1;
  if (total >= L && total <= 2 * L) {
    Move(s, small, big, s->count(small), "root-one");
    Open(s, big);
  } else if (total > 2 * L) {
    const int keep = (total + 1) / 2;
    Move(s, big, small, s->count(big) - keep, "root-both");
    Open(s, big);
    Open(s, small);
  } else {
    int best = -1;
    double best_d = 0.0;
    for (int p = 0; p < f.size(); ++p) {
      if (!f.in_p[p]) continue;
      double d = std::min(s->i2->Distance(p, r1), s->i2->Distance(p, r2));
      if (best < 0 || d < best_d) {
        best = p;
        best_d = d;
      }
    }
    if (best < 0) {
      throw Error(ErrorKind::kInfeasible,
                  "root-pair below L with no facility in P to absorb it");
    }
    Move(s, r1, best, s->count(r1), "root-to-p");
    Move(s, r2, best, s->count(r2), "root-to-p");
  }
}

TreeFixResult RunTreeFix(const I2Instance& i2, const CflInstance& icap,
                         const CflSolution& ascap) {
  TreeFixResult out;
  out.type1 = Type1Reassign(i2, icap, ascap, &out.checks);
  out.partition = PartitionP(out.type1, icap.lower);
  std::vector<char> in_p(i2.size(), 0);
  for (int a : out.partition.p) in_p[a] = 1;
  TreeState state;
  state.i2 = &i2;
  state.lower = icap.lower;
  state.forest = BuildForest(i2, in_p, &out.checks);
  state.held = out.type1.held;
  state.pi = out.type1.loads;
  state.opened = in_p;
  state.checks = out.checks;

  std::vector<int> order;
  for (int a = 0; a < i2.size(); ++a) {
    if (!state.forest.IsRoot(a)) order.push_back(a);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return state.forest.depth[a] > state.forest.depth[b];
  });
  for (int a : order) ProcessNode(&state, a);
  for (int r : state.forest.roots) ProcessNode(&state, r);
  for (int r : state.forest.roots) ResolveRoot(&state, r);

  out.forest = state.forest;
  out.opened = state.opened;
  out.final_held = state.held;
  out.events = std::move(state.events);
  out.checks = state.checks;
  return out;
}

Solution AssembleFinal(const Instance& inst, const I2Instance& i2,
                       const TreeFixResult& fix) {
  Solution sol;
  sol.assign.assign(inst.num_clients(), -1);
  for (int a = 0; a < i2.size(); ++a) {
    const int held = static_cast<int>(fix.final_held[a].size());
    if (!fix.opened[a]) {
      if (held > 0) {
        throw Error(ErrorKind::kInternal,
                    "closed facility " + i2.facility_ids[a] + " still holds clients");
      }
      continue;
    }
    if (held < inst.lower()) {
      std::ostringstream msg;
      msg << "facility " << i2.facility_ids[a] << " serves " << held
          << " clients, below L=" << inst.lower();
      throw Error(ErrorKind::kInternal, msg.str());
    }
    sol.open.push_back(i2.facilities[a]);
    for (int j : fix.final_held[a]) sol.assign[j] = i2.facilities[a];
  }
  for (int j = 0; j < inst.num_clients(); ++j) {
    if (sol.assign[j] < 0) {
      throw Error(ErrorKind::kInternal,
                  "client " + inst.client_id(j) + " lost during reassignment");
    }
  }
  std::sort(sol.open.begin(), sol.open.end());
  return sol;
}

}  // namespace lbubfl
