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

// Instance chain built from the tri-criteria solution S^t:
//   I1    clients moved onto their S^t facility, opening cost zero on F^t;
//   I2    facilities restricted to F^t, costs zero, upper bound dropped;
//   Icap  capacitated instance: a facility short of L clients demands the
//         shortfall, a facility above L splits into a primary site with
//         capacity L and a free site holding the surplus.

#ifndef LBUBFL_TRANSFORM_H_
#define LBUBFL_TRANSFORM_H_

#include <string>
#include <vector>

#include "lbubfl/core.h"
#include "lbubfl/tricriteria.h"

namespace lbubfl {

struct I1Instance {
  Instance base;
  std::vector<int> location;              // client -> sigma^t(client)
  std::vector<ColocatedClients> clients_at;  // one group per F^t member
  std::vector<double> open_cost1;         // 0 on F^t, f_i elsewhere

  // Same facilities, clients relocated; client-client distances become the
  // distances between their locations.
  Instance AsInstance() const;
  bool InFt(int i) const { return count(i) > 0; }
  int count(int i) const;
};

struct I2Instance {
  std::vector<int> facilities;                   // F^t, original indices
  std::vector<std::string> facility_ids;
  std::vector<int> count;                        // n_i, aligned
  std::vector<std::vector<int>> clients;         // client ids per member
  std::vector<double> dist;                      // |F^t|^2 row-major
  int lower = 0;

  int size() const { return static_cast<int>(facilities.size()); }
  double Distance(int a, int b) const { return dist[a * size() + b]; }
  int num_clients() const;
};

enum class SiteRole { kSmall, kBigPrimary, kBigFree };

const char* SiteRoleName(SiteRole role);

struct CflSite {
  std::string id;
  int origin = 0;  // index into I2Instance::facilities
  SiteRole role = SiteRole::kSmall;
  int64_t demand = 0;
  int64_t capacity = 0;
  double open_cost = 0.0;
  double nn_dist = 0.0;     // l(origin)
  std::vector<int> clients;  // original client ids placed here
};

struct CflInstance {
  std::vector<CflSite> sites;
  std::vector<double> dist;  // sites^2, inherited from the origins
  int lower = 0;
  double delta = 0.0;

  int size() const { return static_cast<int>(sites.size()); }
  double Distance(int a, int b) const { return dist[a * size() + b]; }
  int64_t TotalDemand() const;
  int64_t TotalCapacity() const;
};

I1Instance ToI1(const Instance& inst, const TriCriteriaSolution& tri);
I2Instance ToI2(const I1Instance& i1);

// Throws kParameter when |F^t| < 2 or delta <= 0, and kInput for an empty
// F^t member.
CflInstance ToIcap(const I2Instance& i2, double delta);

// 3(2a - 1) / (2a(a + 1)). Throws kAlphaAbort for alpha <= 1/2; alpha above
// one is clamped to one.
double DefaultDelta(double measured_alpha);

// Nearest other member of F^t; lowest index on ties.
std::vector<int> NearestOther(const I2Instance& i2);

}  // namespace lbubfl

#endif  // LBUBFL_TRANSFORM_H_
