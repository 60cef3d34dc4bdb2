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

#include "lbubfl/tricriteria.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "lbubfl/mcflow.h"

namespace lbubfl {
namespace {

constexpr double kRel = 1e-9;

// Radius test with slack so a zero radius still admits co-located points.
bool WithinRadius(double d, double radius) {
  return d <= radius + kRel * std::max(1.0, radius);
}

std::vector<double> AverageCosts(const Instance& inst,
                                 const FractionalSolution& frac) {
  std::vector<double> c(inst.num_clients());
  for (int j = 0; j < inst.num_clients(); ++j) {
    c[j] = AverageConnectionCost(inst, frac, j);
  }
  return c;
}

}  // namespace

void ValidateTriCriteriaOptions(const TriCriteriaOptions& options) {
  if (!(options.ell > 2.0 && options.ell <= 3.0)) {
    std::ostringstream msg;
    msg << "ell must lie in (2, 3], got " << options.ell;
    throw Error(ErrorKind::kParameter, msg.str());
  }
  if (!(options.dense_threshold > 0.0 && options.dense_threshold < 1.0)) {
    std::ostringstream msg;
    msg << "dense threshold must lie in (0, 1), got " << options.dense_threshold;
    throw Error(ErrorKind::kParameter, msg.str());
  }
}

int TriCriteriaChecks::Total() const {
  return separation + distance_bound_1 + distance_bound_2 + distance_bound_3 +
         ball_mass + sparse_lower + dense_cover + dense_load + client_mass;
}

Ball ComputeBall(const Instance& inst, const FractionalSolution& frac, int j,
                 double ell) {
  Ball ball;
  ball.center = j;
  ball.radius = ell * AverageConnectionCost(inst, frac, j);
  for (int i = 0; i < inst.num_facilities(); ++i) {
    if (WithinRadius(inst.Cost(i, j), ball.radius)) {
      ball.members.push_back(i);
      ball.mass += frac.y(i);
    }
  }
  return ball;
}

std::vector<int> Sparsify(const Instance& inst, const FractionalSolution& frac,
                          double ell) {
  const int C = inst.num_clients();
  std::vector<double> avg = AverageCosts(inst, frac);
  std::vector<int> order(C);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return avg[a] < avg[b]; });
  std::vector<char> alive(C, 1);
  std::vector<int> centers;
  for (int jp : order) {
    if (!alive[jp]) continue;
    alive[jp] = 0;
    centers.push_back(jp);
    for (int j = 0; j < C; ++j) {
      if (alive[j] && WithinRadius(inst.ClientDistance(jp, j), 2 * ell * avg[j])) {
        alive[j] = 0;
      }
    }
  }
  return centers;
}

std::vector<Cluster> FormClusters(const Instance& inst,
                                  const FractionalSolution& frac,
                                  const std::vector<int>& centers) {
  if (centers.empty()) {
    throw Error(ErrorKind::kInput, "clusters need at least one center");
  }
  std::vector<int> by_index = centers;
  std::sort(by_index.begin(), by_index.end());
  std::vector<Cluster> clusters(by_index.size());
  for (size_t k = 0; k < by_index.size(); ++k) {
    clusters[k].center = by_index[k];
    clusters[k].phi.assign(inst.num_clients(), 0.0);
  }
  for (int i = 0; i < inst.num_facilities(); ++i) {
    size_t best = 0;
    for (size_t k = 1; k < by_index.size(); ++k) {
      if (inst.Cost(i, by_index[k]) < inst.Cost(i, by_index[best])) best = k;
    }
    clusters[best].members.push_back(i);
  }
  for (Cluster& cl : clusters) {
    for (int i : cl.members) {
      for (int j = 0; j < inst.num_clients(); ++j) cl.phi[j] += frac.x(i, j);
    }
    cl.demand = std::accumulate(cl.phi.begin(), cl.phi.end(), 0.0);
    cl.kind = cl.demand <= inst.upper() + kLpFeasibilityTol ? ClusterKind::kSparse
                                                            : ClusterKind::kDense;
  }
  // Report in selection order so callers can map back to Sparsify().
  std::vector<Cluster> ordered;
  for (int c : centers) {
    auto it = std::lower_bound(by_index.begin(), by_index.end(), c);
    ordered.push_back(std::move(clusters[it - by_index.begin()]));
  }
  return ordered;
}

SparseRounding RoundSparse(const Instance& inst, const FractionalSolution& frac,
                           const Cluster& cluster, double ell) {
  Ball ball = ComputeBall(inst, frac, cluster.center, ell);
  SparseRounding out;
  for (int i : ball.members) {
    if (!std::binary_search(cluster.members.begin(), cluster.members.end(), i)) {
      continue;
    }
    if (out.opened < 0 || inst.open_cost(i) < inst.open_cost(out.opened)) {
      out.opened = i;
    }
  }
  if (out.opened < 0) {
    throw Error(ErrorKind::kInternal,
                "ball of cluster center " + std::to_string(cluster.center) +
                    " has no facility inside its cluster");
  }
  out.load = cluster.demand;
  return out;
}

DenseRounding RoundDense(const Instance& inst, const FractionalSolution& frac,
                         const Cluster& cluster, double threshold) {
  const int m = static_cast<int>(cluster.members.size());
  const double U = inst.upper();
  DenseRounding out;
  out.z.assign(m, 0.0);
  out.z_prime.assign(m, 0.0);
  out.z_hat.assign(m, 0.0);
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    out.z[k] = frac.FacilityLoad(cluster.members[k]) / U;
    total += out.z[k];
  }
  std::vector<int> pos(m);
  std::iota(pos.begin(), pos.end(), 0);
  auto key = [&](int k) {
    int i = cluster.members[k];
    return inst.open_cost(i) + U * inst.Cost(i, cluster.center);
  };
  std::stable_sort(pos.begin(), pos.end(),
                   [&](int a, int b) { return key(a) < key(b); });
  for (int k : pos) out.order.push_back(cluster.members[k]);

  // Greedy transfer of the total opening onto the cheapest members.
  double left = total;
  for (int k : pos) {
    if (left <= kRel) break;
    double take = std::min(1.0, left);
    if (take >= 1.0 - kRel) take = 1.0;
    out.z_prime[k] = take;
    left -= take;
  }
  for (int k = 0; k < m; ++k) {
    double v = out.z_prime[k];
    if (v >= 1.0) {
      out.z_hat[k] = 1.0;
    } else if (v > 0.0) {
      out.fractional = cluster.members[k];
      out.z_hat[k] = v > threshold ? 1.0 : 0.0;
    }
  }
  for (int k = 0; k < m; ++k) {
    if (out.z_hat[k] == 1.0) out.opened.push_back(cluster.members[k]);
  }
  return out;
}

std::vector<double> DistributeDenseDemand(const Cluster& cluster,
                                          const DenseRounding& dense) {
  if (dense.opened.empty()) {
    throw Error(ErrorKind::kInternal, "dense cluster rounded to no facility");
  }
  return std::vector<double>(dense.opened.size(),
                             cluster.demand / dense.opened.size());
}

namespace {

void CheckStructure(const Instance& inst, const FractionalSolution& frac,
                    const std::vector<int>& centers,
                    const std::vector<Cluster>& clusters, double ell,
                    TriCriteriaChecks* checks) {
  std::vector<double> avg = AverageCosts(inst, frac);
  for (size_t a = 0; a < centers.size(); ++a) {
    for (size_t b = a + 1; b < centers.size(); ++b) {
      double d = inst.ClientDistance(centers[a], centers[b]);
      if (!(d > 2 * ell * std::max(avg[centers[a]], avg[centers[b]]))) {
        ++checks->separation;
      }
    }
  }
  for (const Cluster& cl : clusters) {
    const int jp = cl.center;
    Ball ball = ComputeBall(inst, frac, jp, ell);
    if (ball.mass < 1.0 - 1.0 / ell - kLpFeasibilityTol) ++checks->ball_mass;
    for (int j = 0; j < inst.num_clients(); ++j) {
      const double rhs = 2 * ell * avg[j];
      const double jj = inst.ClientDistance(j, jp);
      for (int i : cl.members) {
        if (!LessEqualRel(inst.Cost(i, jp), inst.Cost(i, j) + rhs, kRel)) {
          ++checks->distance_bound_1;
        }
        if (!LessEqualRel(jj, 2 * inst.Cost(i, j) + rhs, kRel)) {
          ++checks->distance_bound_2;
        }
      }
      if (jj <= ell * avg[jp] && !LessEqualRel(avg[jp], 2 * avg[j], kRel)) {
        ++checks->distance_bound_3;
      }
    }
  }
  for (int j = 0; j < inst.num_clients(); ++j) {
    double mass = 0.0;
    for (const Cluster& cl : clusters) mass += cl.phi[j];
    if (mass < 1.0 - kLpFeasibilityTol) ++checks->client_mass;
  }
}

}  // namespace

TriCriteriaSolution BuildTriCriteria(const Instance& inst,
                                     const TriCriteriaOptions& options) {
  ValidateTriCriteriaOptions(options);
  FractionalSolution frac = SolveRelaxation(inst);
  return BuildTriCriteria(inst, frac, options);
}

TriCriteriaSolution BuildTriCriteria(const Instance& inst,
                                     const FractionalSolution& frac,
                                     const TriCriteriaOptions& options) {
  ValidateTriCriteriaOptions(options);
  const double ell = options.ell;
  const double t = options.dense_threshold;
  const int L = inst.lower();
  const int U = inst.upper();
  TriCriteriaSolution out;
  out.frac = frac;
  out.lp_objective = frac.objective;
  out.beta_target = 1.0 + t;
  if (inst.num_clients() == 0) return out;

  out.centers = Sparsify(inst, frac, ell);
  out.clusters = FormClusters(inst, frac, out.centers);
  if (options.check_invariants) {
    CheckStructure(inst, frac, out.centers, out.clusters, ell, &out.checks);
  }

  // Per-client mass, used to renormalize any LP over-coverage.
  std::vector<double> mass(inst.num_clients());
  for (int j = 0; j < inst.num_clients(); ++j) mass[j] = frac.ClientMass(j);

  std::vector<std::vector<double>> rows;
  for (const Cluster& cl : out.clusters) {
    std::vector<int> opened;
    std::vector<double> loads;
    if (cl.kind == ClusterKind::kSparse) {
      SparseRounding sr = RoundSparse(inst, frac, cl, ell);
      opened = {sr.opened};
      loads = {sr.load};
      if (sr.load < (1.0 - 1.0 / ell) * L - kLpFeasibilityTol) {
        ++out.checks.sparse_lower;
      }
    } else {
      DenseRounding dr = RoundDense(inst, frac, cl, t);
      opened = dr.opened;
      loads = DistributeDenseDemand(cl, dr);
      double zsum = static_cast<double>(dr.opened.size());
      if ((1.0 + t) * U * zsum < cl.demand - kLpFeasibilityTol) {
        ++out.checks.dense_cover;
        if (options.check_invariants) {
          throw Error(ErrorKind::kInternal,
                      "dense rounding lost more than the threshold allows");
        }
      }
      for (double l : loads) {
        if (l > (1.0 + t) * U + kLpFeasibilityTol) ++out.checks.dense_load;
      }
    }
    for (size_t k = 0; k < opened.size(); ++k) {
      std::vector<double> row(inst.num_clients());
      double normalized = 0.0;
      for (int j = 0; j < inst.num_clients(); ++j) {
        row[j] = loads[k] / cl.demand * cl.phi[j] / mass[j];
        normalized += row[j];
      }
      out.rounded_open.push_back(opened[k]);
      out.fractional_load.push_back(normalized);
      rows.push_back(std::move(row));
    }
  }

  IntegralizeRequest req;
  req.open = out.rounded_open;
  req.fractional = rows;
  req.lower_target = *std::min_element(out.fractional_load.begin(),
                                       out.fractional_load.end());
  req.upper_target = std::max<double>(
      U, *std::max_element(out.fractional_load.begin(),
                           out.fractional_load.end()));
  std::vector<int> assign = IntegralizeAssignment(inst, req);
  out.integral_lower = static_cast<int>(std::floor(req.lower_target + 1e-9));
  out.integral_upper = static_cast<int>(std::ceil(req.upper_target - 1e-9));

  auto min_load = [&](const std::vector<int>& a) {
    std::vector<int> loads(inst.num_facilities(), 0);
    for (int i : a) ++loads[i];
    int lo = std::numeric_limits<int>::max();
    for (int i = 0; i < inst.num_facilities(); ++i) {
      if (loads[i] > 0) lo = std::min(lo, loads[i]);
    }
    return lo;
  };

  // Outward rounding can land exactly on L/2. Every fractional load exceeds
  // L/2, so retry with the smallest integer bound above it.
  if (2 * min_load(assign) <= L) {
    const int strict = L / 2 + 1;
    for (bool full : {false, true}) {
      req.full_support = full;
      req.lower_bound_override = strict;
      try {
        assign = IntegralizeAssignment(inst, req);
        out.integral_lower = strict;
        out.tightened_lower = true;
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kInfeasible) throw;
      }
    }
  }

  out.assign = assign;
  std::vector<int> loads(inst.num_facilities(), 0);
  for (int i : assign) ++loads[i];
  for (int i = 0; i < inst.num_facilities(); ++i) {
    if (loads[i] > 0) out.open.push_back(i);
  }
  BoundReport report = CheckBounds(inst, out.AsSolution(), 0.0, 1e9);
  out.measured_alpha = report.measured_alpha;
  out.measured_beta = report.measured_beta;
  out.cost = Cost(inst, out.AsSolution());
  if (!(out.measured_alpha > 0.5)) {
    std::ostringstream msg;
    msg << "measured lower-bound factor " << out.measured_alpha
        << " is not above 1/2 (min load " << report.min_load << ", L=" << L
        << ")";
    throw Error(ErrorKind::kAlphaAbort, msg.str());
  }
  return out;
}

}  // namespace lbubfl
