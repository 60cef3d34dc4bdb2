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

// Converts a self-serving capacitated solution into an assignment in which
// every open facility serves at least L clients.
//
// Nodes are indexed like I2Instance::facilities. Type-1 moves follow the
// capacitated shipments; facilities still below L then hang off their
// nearest other facility (eta), forming trees rooted at a facility with at
// least L clients or at a mutual-nearest root-pair. Trees are processed
// bottom-up; a node's clients either open it or cascade to a sibling or to
// the parent. Client ids travel with the counts so the final solution is
// priced at true positions.

#ifndef LBUBFL_TREEFIX_H_
#define LBUBFL_TREEFIX_H_

#include <string>
#include <vector>

#include "lbubfl/cfl.h"
#include "lbubfl/core.h"
#include "lbubfl/transform.h"

namespace lbubfl {

struct Reassignment {
  int size = 0;
  std::vector<int64_t> rho1;  // rho1[a * size + b]; diagonal holds n_a
  std::vector<int64_t> loads;  // pi after type-1 moves
  std::vector<std::vector<int>> held;  // client ids per node, ascending

  int64_t Rho(int a, int b) const { return rho1[a * size + b]; }
};

struct TreeFixChecks {
  int claim_out = 0;       // sum_{b != a} rho1(a, b) <= n_a
  int claim_in = 0;        // n_b + incoming <= max(L, n_b)
  int observation = 0;     // closed small or closed primary implies P
  int forest_shape = 0;    // edge costs non-increasing, P only at roots
  int non_root_2l = 0;     // non-root node never above 2L
  int sibling = 0;         // d(y, next) <= 3 d(y, eta(y))
  int edge_l = 0;          // at most L clients per type-2 move
  int p_root = 0;          // absorbed P-root load <= pi + L
  int Total() const;
};

// Throws kInternal when a site lacks clients for its shipments.
Reassignment Type1Reassign(const I2Instance& i2, const CflInstance& icap,
                           const CflSolution& ascap,
                           TreeFixChecks* checks = nullptr);

struct Partition {
  std::vector<int> p;      // pi >= L
  std::vector<int> p_bar;  // pi < L
};

Partition PartitionP(const Reassignment& reass, int lower);

struct FacilityForest {
  std::vector<int> eta;       // nearest other node, -1 for P
  std::vector<char> in_p;
  std::vector<int> partner;   // other root-pair member, or -1
  std::vector<int> depth;     // roots and root-pair members are 0
  std::vector<std::vector<int>> children;  // excludes the partner
  std::vector<double> edge_cost;           // d(a, eta(a)), 0 for P
  std::vector<int> roots;     // P nodes and lower root-pair members

  int size() const { return static_cast<int>(eta.size()); }
  bool IsRoot(int a) const { return in_p[a] || partner[a] >= 0; }
};

FacilityForest BuildForest(const I2Instance& i2, const std::vector<char>& in_p,
                           TreeFixChecks* checks = nullptr);

struct TreeEvent {
  std::string kind;  // open, sibling, parent, root-one, root-both, root-to-p
  int from = -1;
  int to = -1;
  int count = 0;
};

// Mutable state of the bottom-up pass.
struct TreeState {
  const I2Instance* i2 = nullptr;
  int lower = 0;
  FacilityForest forest;
  std::vector<std::vector<int>> held;
  std::vector<int64_t> pi;
  std::vector<char> opened;
  std::vector<TreeEvent> events;
  TreeFixChecks checks;

  int count(int a) const { return static_cast<int>(held[a].size()); }
};

// Resolves every child of x (x may be the lower member of a root-pair).
void ProcessNode(TreeState* state, int x);

// Root-pair cases by total T: [L, 2L] opens one member, above 2L opens both,
// below L ships to the nearest P node. Throws kInfeasible when T < L and P
// is empty. P roots need no action.
void ResolveRoot(TreeState* state, int root);

struct TreeFixResult {
  Reassignment type1;
  Partition partition;
  FacilityForest forest;
  std::vector<char> opened;                  // per node
  std::vector<std::vector<int>> final_held;  // per node
  std::vector<TreeEvent> events;
  TreeFixChecks checks;
};

TreeFixResult RunTreeFix(const I2Instance& i2, const CflInstance& icap,
                         const CflSolution& ascap);

// Solution over the original instance. Throws kInternal if an open
// facility serves fewer than L clients or a client is left unassigned.
Solution AssembleFinal(const Instance& inst, const I2Instance& i2,
                       const TreeFixResult& fix);

}  // namespace lbubfl

#endif  // LBUBFL_TREEFIX_H_
