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

#include "lbubfl/transform.h"

#include <algorithm>
#include <sstream>

namespace lbubfl {

int I1Instance::count(int i) const {
  for (const ColocatedClients& g : clients_at) {
    if (g.location == i) return g.count;
  }
  return 0;
}

Instance I1Instance::AsInstance() const {
  const int F = base.num_facilities();
  const int C = base.num_clients();
  const int n = F + C;
  // Point p of the relocated instance sits at original point at(p).
  auto at = [&](int p) { return p < F ? p : location[p - F]; };
  std::vector<double> matrix(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      matrix[a * n + b] = a == b ? 0.0 : base.PointDistance(at(a), at(b));
    }
  }
  return Instance::FromMatrix(base.facility_ids(), open_cost1, base.client_ids(),
                              std::move(matrix), base.lower(), base.upper());
}

int I2Instance::num_clients() const {
  int total = 0;
  for (int c : count) total += c;
  return total;
}

const char* SiteRoleName(SiteRole role) {
  switch (role) {
    case SiteRole::kSmall:
      return "small";
    case SiteRole::kBigPrimary:
      return "big-primary";
    case SiteRole::kBigFree:
      return "big-free";
  }
  return "unknown";
}

int64_t CflInstance::TotalDemand() const {
  int64_t total = 0;
  for (const CflSite& s : sites) total += s.demand;
  return total;
}

int64_t CflInstance::TotalCapacity() const {
  int64_t total = 0;
  for (const CflSite& s : sites) total += s.capacity;
  return total;
}

I1Instance ToI1(const Instance& inst, const TriCriteriaSolution& tri) {
  if (static_cast<int>(tri.assign.size()) != inst.num_clients()) {
    throw Error(ErrorKind::kInput, "tri-criteria solution must cover every client");
  }
  I1Instance i1;
  i1.base = inst;
  i1.location = tri.assign;
  std::vector<int> loads(inst.num_facilities(), 0);
  for (int i : tri.assign) ++loads[i];
  i1.open_cost1 = inst.open_costs();
  for (int i = 0; i < inst.num_facilities(); ++i) {
    if (loads[i] > 0) {
      i1.clients_at.push_back({i, loads[i]});
      i1.open_cost1[i] = 0.0;
    }
  }
  return i1;
}

I2Instance ToI2(const I1Instance& i1) {
  I2Instance i2;
  i2.lower = i1.base.lower();
  for (const ColocatedClients& g : i1.clients_at) {
    i2.facilities.push_back(g.location);
    i2.facility_ids.push_back(i1.base.facility_id(g.location));
    i2.count.push_back(g.count);
  }
  const int k = i2.size();
  i2.clients.assign(k, {});
  for (int j = 0; j < i1.base.num_clients(); ++j) {
    auto it = std::find(i2.facilities.begin(), i2.facilities.end(),
                        i1.location[j]);
    i2.clients[it - i2.facilities.begin()].push_back(j);
  }
  i2.dist.resize(static_cast<size_t>(k) * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      i2.dist[a * k + b] =
          i1.base.FacilityDistance(i2.facilities[a], i2.facilities[b]);
    }
  }
  return i2;
}

std::vector<int> NearestOther(const I2Instance& i2) {
  std::vector<int> eta(i2.size(), -1);
  for (int a = 0; a < i2.size(); ++a) {
    for (int b = 0; b < i2.size(); ++b) {
      if (b == a) continue;
      if (eta[a] < 0 || i2.Distance(a, b) < i2.Distance(a, eta[a])) eta[a] = b;
    }
  }
  return eta;
}

CflInstance ToIcap(const I2Instance& i2, double delta) {
  if (i2.size() < 2) {
    throw Error(ErrorKind::kParameter,
                "capacitated instance needs at least two facilities in F^t");
  }
  if (!(delta > 0.0)) {
    throw Error(ErrorKind::kParameter, "delta must be positive");
  }
  const int64_t L = i2.lower;
  std::vector<int> eta = NearestOther(i2);
  CflInstance cap;
  cap.lower = i2.lower;
  cap.delta = delta;
  for (int a = 0; a < i2.size(); ++a) {
    const int64_t n = i2.count[a];
    if (n <= 0) {
      throw Error(ErrorKind::kInput, "facility " + i2.facility_ids[a] +
                                         " in F^t has no clients");
    }
    const double l = i2.Distance(a, eta[a]);
    if (n <= L) {
      cap.sites.push_back({i2.facility_ids[a], a, SiteRole::kSmall, L - n, L,
                           delta * n * l, l, i2.clients[a]});
    } else {
      // The L lowest-id clients stay on the primary site.
      std::vector<int> sorted = i2.clients[a];
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> head(sorted.begin(), sorted.begin() + L);
      std::vector<int> tail(sorted.begin() + L, sorted.end());
      cap.sites.push_back({i2.facility_ids[a] + "#1", a, SiteRole::kBigPrimary,
                           0, L, delta * L * l, l, head});
      cap.sites.push_back({i2.facility_ids[a] + "#2", a, SiteRole::kBigFree, 0,
                           n - L, 0.0, l, tail});
    }
  }
  const int s = cap.size();
  cap.dist.resize(static_cast<size_t>(s) * s);
  for (int a = 0; a < s; ++a) {
    for (int b = 0; b < s; ++b) {
      cap.dist[a * s + b] =
          i2.Distance(cap.sites[a].origin, cap.sites[b].origin);
    }
  }
  return cap;
}

double DefaultDelta(double measured_alpha) {
  if (!(measured_alpha > 0.5)) {
    std::ostringstream msg;
    msg << "delta needs alpha > 1/2, got " << measured_alpha;
    throw Error(ErrorKind::kAlphaAbort, msg.str());
  }
  const double a = std::min(measured_alpha, 1.0);
  return 3.0 * (2.0 * a - 1.0) / (2.0 * a * (a + 1.0));
}

}  // namespace lbubfl
