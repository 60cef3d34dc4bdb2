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

// Data model shared by every stage: instances with uniform lower and upper
// bounds, integral solutions, metric validation and cost evaluation.
//
// Points are indexed in one space: facilities occupy [0, F) and clients
// occupy [F, F + C). All distances live in a dense (F + C)^2 matrix.

#ifndef LBUBFL_CORE_H_
#define LBUBFL_CORE_H_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lbubfl {

// Maps onto CLI exit codes; see ExitCodeFor().
enum class ErrorKind {
  kInput,       // malformed file or argument
  kInfeasible,  // no bound-respecting assignment exists
  kMetric,      // distances violate the metric axioms
  kParameter,   // parameter outside its admissible range
  kInternal,    // an invariant that should hold by construction failed
  kAlphaAbort,  // measured lower-bound factor too small for the transforms
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

int ExitCodeFor(ErrorKind kind);
const char* ErrorKindName(ErrorKind kind);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

class Instance {
 public:
  Instance() = default;

  // Euclidean metric derived from the coordinates.
  static Instance FromCoordinates(std::vector<std::string> facility_ids,
                                  std::vector<double> open_costs,
                                  std::vector<Point> facility_points,
                                  std::vector<std::string> client_ids,
                                  std::vector<Point> client_points, int lower,
                                  int upper);

  // `matrix` is row-major over (F + C)^2, facilities first. The metric axioms
  // are not checked here; use ValidateMetric().
  static Instance FromMatrix(std::vector<std::string> facility_ids,
                             std::vector<double> open_costs,
                             std::vector<std::string> client_ids,
                             std::vector<double> matrix, int lower, int upper);

  int num_facilities() const { return static_cast<int>(facility_ids_.size()); }
  int num_clients() const { return static_cast<int>(client_ids_.size()); }
  int num_points() const { return num_facilities() + num_clients(); }
  int lower() const { return lower_; }
  int upper() const { return upper_; }

  const std::string& facility_id(int i) const { return facility_ids_[i]; }
  const std::string& client_id(int j) const { return client_ids_[j]; }
  const std::vector<std::string>& facility_ids() const { return facility_ids_; }
  const std::vector<std::string>& client_ids() const { return client_ids_; }
  double open_cost(int i) const { return open_costs_[i]; }
  const std::vector<double>& open_costs() const { return open_costs_; }

  bool has_coordinates() const { return !points_.empty(); }
  const Point& point(int p) const { return points_[p]; }

  int FacilityPoint(int i) const { return i; }
  int ClientPoint(int j) const { return num_facilities() + j; }

  double PointDistance(int a, int b) const { return dist_[a * num_points() + b]; }
  // c(i, j): facility i to client j.
  double Cost(int i, int j) const { return PointDistance(i, ClientPoint(j)); }
  double FacilityDistance(int i, int k) const { return PointDistance(i, k); }
  double ClientDistance(int j, int k) const {
    return PointDistance(ClientPoint(j), ClientPoint(k));
  }
  const std::vector<double>& matrix() const { return dist_; }

  // Index lookups; throw kInput on unknown ids.
  int FacilityIndex(const std::string& id) const;
  int ClientIndex(const std::string& id) const;

 private:
  void Validate() const;

  std::vector<std::string> facility_ids_;
  std::vector<std::string> client_ids_;
  std::vector<double> open_costs_;
  std::vector<Point> points_;  // empty for matrix instances
  std::vector<double> dist_;
  int lower_ = 1;
  int upper_ = 1;
};

struct Solution {
  std::vector<int> open;    // sorted facility indices
  std::vector<int> assign;  // client index -> facility index

  std::vector<int> Loads(int num_facilities) const;
};

// Throws kInput when assign is not total or targets a closed facility.
void ValidateSolution(const Instance& inst, const Solution& sol);

// n_i clients colocated at facility `location`.
struct ColocatedClients {
  int location = 0;
  int count = 0;
};

// Groups of a full assignment, one per facility with positive load.
std::vector<ColocatedClients> Colocate(const Instance& inst,
                                       const Solution& sol);

enum class MetricViolationKind { kDiagonal, kNegative, kSymmetry, kTriangle };

struct MetricViolation {
  MetricViolationKind kind;
  int a = 0;
  int b = 0;
  int c = -1;  // only for triangles: dist(a,c) > dist(a,b) + dist(b,c)
};

// Empty iff the distances form a (pseudo)metric within `rel_tol`.
std::vector<MetricViolation> ValidateMetric(const Instance& inst,
                                            double rel_tol = 1e-9);

double Cost(const Instance& inst, const Solution& sol);
double ConnectionCost(const Instance& inst, const Solution& sol);

struct BoundReport {
  bool pass = true;
  std::vector<int> loads;  // per facility, zero when closed
  int min_load = 0;        // over open facilities
  int max_load = 0;
  double measured_alpha = 0.0;  // min_load / L
  double measured_beta = 0.0;   // max_load / U
  int lower_violations = 0;
  int upper_violations = 0;
};

// Passes iff every open load lies in [ceil(alpha L) - slack,
// floor(beta U) + slack].
BoundReport CheckBounds(const Instance& inst, const Solution& sol,
                        double alpha, double beta, int slack = 0);

// Smallest k <= num_facilities with kL <= num_clients <= kU, if any.
std::optional<int> FeasibleOpenCount(int num_clients, int num_facilities,
                                     int lower, int upper);

// Throws kInfeasible with the violated counting condition.
void RequireCountingFeasible(const Instance& inst);

// Relative comparison helpers used by every stage.
inline bool LessEqualRel(double a, double b, double rel) {
  double scale = std::max({1.0, a < 0 ? -a : a, b < 0 ? -b : b});
  return a <= b + rel * scale;
}

}  // namespace lbubfl

#endif  // LBUBFL_CORE_H_
