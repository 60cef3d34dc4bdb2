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

#include "lbubfl/core.h"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

namespace lbubfl {

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput:
      return 1;
    case ErrorKind::kInfeasible:
      return 2;
    case ErrorKind::kMetric:
      return 3;
    case ErrorKind::kParameter:
      return 4;
    case ErrorKind::kInternal:
      return 5;
    case ErrorKind::kAlphaAbort:
      return 6;
  }
  return 1;
}

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput:
      return "input";
    case ErrorKind::kInfeasible:
      return "infeasible";
    case ErrorKind::kMetric:
      return "metric";
    case ErrorKind::kParameter:
      return "parameter";
    case ErrorKind::kInternal:
      return "internal";
    case ErrorKind::kAlphaAbort:
      return "alpha-abort";
  }
  return "unknown";
}

Instance Instance::FromCoordinates(std::vector<std::string> facility_ids,
                                   std::vector<double> open_costs,
                                   std::vector<Point> facility_points,
                                   std::vector<std::string> client_ids,
                                   std::vector<Point> client_points, int lower,
                                   int upper) {
  if (facility_points.size() != facility_ids.size() ||
      client_points.size() != client_ids.size()) {
    throw Error(ErrorKind::kInput, "coordinate count does not match id count");
  }
  Instance inst;
  inst.facility_ids_ = std::move(facility_ids);
  inst.client_ids_ = std::move(client_ids);
  inst.open_costs_ = std::move(open_costs);
  inst.lower_ = lower;
  inst.upper_ = upper;
  inst.points_ = std::move(facility_points);
  inst.points_.insert(inst.points_.end(), client_points.begin(),
                      client_points.end());
  const int n = inst.num_points();
  inst.dist_.assign(static_cast<size_t>(n) * n, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      double d = std::hypot(inst.points_[a].x - inst.points_[b].x,
                            inst.points_[a].y - inst.points_[b].y);
      inst.dist_[a * n + b] = d;
      inst.dist_[b * n + a] = d;
    }
  }
  inst.Validate();
  return inst;
}

Instance Instance::FromMatrix(std::vector<std::string> facility_ids,
                              std::vector<double> open_costs,
                              std::vector<std::string> client_ids,
                              std::vector<double> matrix, int lower,
                              int upper) {
  Instance inst;
  inst.facility_ids_ = std::move(facility_ids);
  inst.client_ids_ = std::move(client_ids);
  inst.open_costs_ = std::move(open_costs);
  inst.lower_ = lower;
  inst.upper_ = upper;
  const size_t n = inst.num_points();
  if (matrix.size() != n * n) {
    std::ostringstream msg;
    msg << "distance matrix has " << matrix.size() << " entries, expected "
        << n * n;
    throw Error(ErrorKind::kInput, msg.str());
  }
  inst.dist_ = std::move(matrix);
  inst.Validate();
  return inst;
}

void Instance::Validate() const {
  if (lower_ < 1 || upper_ < 1) {
    throw Error(ErrorKind::kParameter, "L and U must be positive integers");
  }
  if (lower_ > upper_) {
    throw Error(ErrorKind::kParameter, "L must not exceed U");
  }
  if (open_costs_.size() != facility_ids_.size()) {
    throw Error(ErrorKind::kInput, "one opening cost per facility required");
  }
  for (double f : open_costs_) {
    if (!(f >= 0.0) || !std::isfinite(f)) {
      throw Error(ErrorKind::kInput, "opening costs must be finite and >= 0");
    }
  }
  for (double d : dist_) {
    if (!std::isfinite(d)) {
      throw Error(ErrorKind::kInput, "distances must be finite");
    }
  }
  std::set<std::string> seen(facility_ids_.begin(), facility_ids_.end());
  if (seen.size() != facility_ids_.size()) {
    throw Error(ErrorKind::kInput, "duplicate facility id");
  }
  std::set<std::string> seen_clients(client_ids_.begin(), client_ids_.end());
  if (seen_clients.size() != client_ids_.size()) {
    throw Error(ErrorKind::kInput, "duplicate client id");
  }
}

int Instance::FacilityIndex(const std::string& id) const {
  for (int i = 0; i < num_facilities(); ++i) {
    if (facility_ids_[i] == id) return i;
  }
  throw Error(ErrorKind::kInput, "unknown facility id '" + id + "'");
}

int Instance::ClientIndex(const std::string& id) const {
  for (int j = 0; j < num_clients(); ++j) {
    if (client_ids_[j] == id) return j;
  }
  throw Error(ErrorKind::kInput, "unknown client id '" + id + "'");
}

std::vector<int> Solution::Loads(int num_facilities) const {
  std::vector<int> loads(num_facilities, 0);
  for (int i : assign) ++loads[i];
  return loads;
}

void ValidateSolution(const Instance& inst, const Solution& sol) {
  if (static_cast<int>(sol.assign.size()) != inst.num_clients()) {
    throw Error(ErrorKind::kInput, "assignment must cover every client");
  }
  std::vector<char> is_open(inst.num_facilities(), 0);
  for (int i : sol.open) {
    if (i < 0 || i >= inst.num_facilities()) {
      throw Error(ErrorKind::kInput, "open set names an unknown facility");
    }
    is_open[i] = 1;
  }
  for (int i : sol.assign) {
    if (i < 0 || i >= inst.num_facilities()) {
      throw Error(ErrorKind::kInput, "assignment names an unknown facility");
    }
    if (!is_open[i]) {
      throw Error(ErrorKind::kInput, "client assigned to a closed facility");
    }
  }
}

std::vector<ColocatedClients> Colocate(const Instance& inst,
                                       const Solution& sol) {
  std::vector<int> loads = sol.Loads(inst.num_facilities());
  std::vector<ColocatedClients> groups;
  for (int i = 0; i < inst.num_facilities(); ++i) {
    if (loads[i] > 0) groups.push_back({i, loads[i]});
  }
  return groups;
}

std::vector<MetricViolation> ValidateMetric(const Instance& inst,
                                            double rel_tol) {
  std::vector<MetricViolation> out;
  const int n = inst.num_points();
  for (int a = 0; a < n; ++a) {
    if (inst.PointDistance(a, a) != 0.0) {
      out.push_back({MetricViolationKind::kDiagonal, a, a});
    }
    for (int b = 0; b < n; ++b) {
      double ab = inst.PointDistance(a, b);
      if (ab < 0.0) out.push_back({MetricViolationKind::kNegative, a, b});
      if (a < b && !LessEqualRel(std::abs(ab - inst.PointDistance(b, a)), 0.0,
                                 rel_tol)) {
        out.push_back({MetricViolationKind::kSymmetry, a, b});
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      const double ab = inst.PointDistance(a, b);
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        double ac = inst.PointDistance(a, c);
        double via = ab + inst.PointDistance(b, c);
        if (ac > via + rel_tol * std::max(1.0, via)) {
          out.push_back({MetricViolationKind::kTriangle, a, b, c});
        }
      }
    }
  }
  return out;
}

double ConnectionCost(const Instance& inst, const Solution& sol) {
  if (static_cast<int>(sol.assign.size()) != inst.num_clients()) {
    throw Error(ErrorKind::kInput, "assignment must cover every client");
  }
  double total = 0.0;
  for (int j = 0; j < inst.num_clients(); ++j) {
    int i = sol.assign[j];
    if (i < 0 || i >= inst.num_facilities()) {
      throw Error(ErrorKind::kInput, "assignment names an unknown facility");
    }
    total += inst.Cost(i, j);
  }
  return total;
}

double Cost(const Instance& inst, const Solution& sol) {
  ValidateSolution(inst, sol);
  double total = 0.0;
  for (int i : sol.open) total += inst.open_cost(i);
  return total + ConnectionCost(inst, sol);
}

BoundReport CheckBounds(const Instance& inst, const Solution& sol,
                        double alpha, double beta, int slack) {
  BoundReport report;
  report.loads = sol.Loads(inst.num_facilities());
  const int lo = static_cast<int>(std::ceil(alpha * inst.lower() - 1e-9)) - slack;
  const int hi = static_cast<int>(std::floor(beta * inst.upper() + 1e-9)) + slack;
  report.min_load = std::numeric_limits<int>::max();
  for (int i : sol.open) {
    int load = report.loads[i];
    report.min_load = std::min(report.min_load, load);
    report.max_load = std::max(report.max_load, load);
    if (load < lo) ++report.lower_violations;
    if (load > hi) ++report.upper_violations;
  }
  if (sol.open.empty()) report.min_load = 0;
  report.measured_alpha = static_cast<double>(report.min_load) / inst.lower();
  report.measured_beta = static_cast<double>(report.max_load) / inst.upper();
  report.pass = report.lower_violations == 0 && report.upper_violations == 0;
  return report;
}

std::optional<int> FeasibleOpenCount(int num_clients, int num_facilities,
                                     int lower, int upper) {
  if (num_clients == 0) return 0;
  for (int k = 1; k <= num_facilities; ++k) {
    if (static_cast<int64_t>(k) * lower <= num_clients &&
        num_clients <= static_cast<int64_t>(k) * upper) {
      return k;
    }
  }
  return std::nullopt;
}

void RequireCountingFeasible(const Instance& inst) {
  if (!FeasibleOpenCount(inst.num_clients(), inst.num_facilities(),
                         inst.lower(), inst.upper())) {
    std::ostringstream msg;
    msg << "no k <= |F|=" << inst.num_facilities() << " with k*L <= |C| <= k*U"
        << " (|C|=" << inst.num_clients() << ", L=" << inst.lower()
        << ", U=" << inst.upper() << ")";
    throw Error(ErrorKind::kInfeasible, msg.str());
  }
}

}  // namespace lbubfl
