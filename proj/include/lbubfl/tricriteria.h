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

// LP rounding to a solution that opens facilities integrally while relaxing
// both load bounds: sparsify clients by ball radius, cluster facilities
// around the survivors, round each cluster, then integralize the
// assignment with a min-cost flow.

#ifndef LBUBFL_TRICRITERIA_H_
#define LBUBFL_TRICRITERIA_H_

#include <vector>

#include "lbubfl/core.h"
#include "lbubfl/lp.h"

namespace lbubfl {

struct TriCriteriaOptions {
  double ell = 2.01;             // in (2, 3]
  double dense_threshold = 0.5;  // in (0, 1); upper factor is 1 + threshold
  bool check_invariants = true;
};

// Throws kParameter for ell or threshold outside their ranges.
void ValidateTriCriteriaOptions(const TriCriteriaOptions& options);

struct Ball {
  int center = 0;
  double radius = 0.0;       // ell * C^_center
  std::vector<int> members;  // facilities within radius
  double mass = 0.0;         // sum of y over members
};

Ball ComputeBall(const Instance& inst, const FractionalSolution& frac, int j,
                 double ell);

// Cluster centers in selection order: ascending radius, lowest index first.
std::vector<int> Sparsify(const Instance& inst, const FractionalSolution& frac,
                          double ell);

enum class ClusterKind { kSparse, kDense };

struct Cluster {
  int center = 0;
  std::vector<int> members;  // N_center, ascending
  double demand = 0.0;       // d = sum_j phi[j]
  std::vector<double> phi;   // per client: x mass on members
  ClusterKind kind = ClusterKind::kSparse;
};

// Each facility joins its nearest center; ties go to the lower client index.
std::vector<Cluster> FormClusters(const Instance& inst,
                                  const FractionalSolution& frac,
                                  const std::vector<int>& centers);

struct SparseRounding {
  int opened = -1;
  double load = 0.0;  // equals the cluster demand
};

// Opens the cheapest facility of B(center) within the cluster. Throws
// kInternal when that intersection is empty.
SparseRounding RoundSparse(const Instance& inst, const FractionalSolution& frac,
                           const Cluster& cluster, double ell);

struct DenseRounding {
  std::vector<int> order;  // members by f_i + U c(i, center), then index
  std::vector<double> z;        // aligned with cluster.members
  std::vector<double> z_prime;  // almost integral
  std::vector<double> z_hat;    // integral
  int fractional = -1;          // member with fractional z_prime, or -1
  std::vector<int> opened;      // facilities with z_hat = 1, ascending
};

DenseRounding RoundDense(const Instance& inst, const FractionalSolution& frac,
                         const Cluster& cluster, double threshold);

// l_i = demand / |opened| for each opened facility. Throws kInternal when
// nothing is opened.
std::vector<double> DistributeDenseDemand(const Cluster& cluster,
                                          const DenseRounding& dense);

struct TriCriteriaChecks {
  int separation = 0;
  int distance_bound_1 = 0;  // c(i, j') <= c(i, j) + 2 ell C^_j
  int distance_bound_2 = 0;  // c(j, j') <= 2 c(i, j) + 2 ell C^_j
  int distance_bound_3 = 0;  // c(j, j') <= ell C^_j' implies C^_j' <= 2 C^_j
  int ball_mass = 0;
  int sparse_lower = 0;      // d >= (1 - 1/ell) L
  int dense_cover = 0;       // (1 + t) U sum z_hat >= d
  int dense_load = 0;        // l_i <= (1 + t) U
  int client_mass = 0;       // sum over clusters of phi >= 1 - 1e-7
  int Total() const;
};

struct TriCriteriaSolution {
  std::vector<int> open;    // F^t: facilities with positive load
  std::vector<int> assign;  // sigma^t
  double measured_alpha = 0.0;
  double measured_beta = 0.0;
  double cost = 0.0;
  double beta_target = 1.5;
  double lp_objective = 0.0;

  FractionalSolution frac;
  std::vector<int> centers;
  std::vector<Cluster> clusters;
  std::vector<int> rounded_open;         // integrally opened by rounding
  std::vector<double> fractional_load;   // per rounded_open facility
  int integral_lower = 0;                // bounds used by the flow
  int integral_upper = 0;
  bool tightened_lower = false;  // integer lower bound raised above floor
  TriCriteriaChecks checks;

  Solution AsSolution() const { return {open, assign}; }
};

// Solves the LP and rounds it. Throws kAlphaAbort when the measured lower
// factor is not above 1/2.
TriCriteriaSolution BuildTriCriteria(const Instance& inst,
                                     const TriCriteriaOptions& options = {});
TriCriteriaSolution BuildTriCriteria(const Instance& inst,
                                     const FractionalSolution& frac,
                                     const TriCriteriaOptions& options);

}  // namespace lbubfl

#endif  // LBUBFL_TRICRITERIA_H_
