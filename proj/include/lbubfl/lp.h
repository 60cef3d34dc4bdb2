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

// Linear programs and the relaxation of the lower- and upper-bounded
// facility location integer program.
//
// LpProblem is a neutral description: minimize c.x subject to linear rows
// and 0 <= x <= upper. SolveLp() is a dense two-phase primal simplex with
// bounded variables; another solver can consume the same description.
// Rows marked `lazy` are withheld until the incumbent violates them.

#ifndef LBUBFL_LP_H_
#define LBUBFL_LP_H_

#include <limits>
#include <string>
#include <vector>

#include "lbubfl/core.h"

namespace lbubfl {

inline constexpr double kLpFeasibilityTol = 1e-7;
inline constexpr double kLpPivotTol = 1e-10;
inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LinearTerm {
  int var = 0;
  double coef = 0.0;
};

struct LinearRow {
  std::string name;
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
  bool lazy = false;
};

struct LpProblem {
  std::vector<std::string> var_names;
  std::vector<double> objective;
  std::vector<double> upper;  // kLpInfinity allowed; lower bounds are 0
  std::vector<LinearRow> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  int AddVar(const std::string& name, double cost, double ub);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;
  double objective = 0.0;
  int iterations = 0;
  int lazy_rounds = 0;
  int active_rows = 0;
};

struct SimplexOptions {
  int max_iterations = 200000;
  // Dantzig pricing switches to Bland's rule after this many iterations
  // without objective progress.
  int stall_limit = 50;
};

LpResult SolveLp(const LpProblem& lp, const SimplexOptions& options = {});

// CPLEX LP text format.
std::string ExportLpFormat(const LpProblem& lp);

// y_i occupies variable i; x_ij occupies F + i * C + j.
struct Relaxation {
  LpProblem problem;
  int num_facilities = 0;
  int num_clients = 0;

  int YVar(int i) const { return i; }
  int XVar(int i, int j) const { return num_facilities + i * num_clients + j; }
};

// Coverage rows (>= 1), load coupling rows L y_i <= sum_j x_ij <= U y_i, and
// lazy linking rows x_ij <= y_i. Throws kInfeasible on the counting precheck.
Relaxation BuildRelaxation(const Instance& inst);

class FractionalSolution {
 public:
  FractionalSolution() = default;
  FractionalSolution(int num_facilities, int num_clients)
      : num_facilities_(num_facilities),
        num_clients_(num_clients),
        x_(static_cast<size_t>(num_facilities) * num_clients, 0.0),
        y_(num_facilities, 0.0) {}

  int num_facilities() const { return num_facilities_; }
  int num_clients() const { return num_clients_; }
  double x(int i, int j) const { return x_[i * num_clients_ + j]; }
  double& x(int i, int j) { return x_[i * num_clients_ + j]; }
  double y(int i) const { return y_[i]; }
  double& y(int i) { return y_[i]; }
  double objective = 0.0;

  double ClientMass(int j) const;
  double FacilityLoad(int i) const;

 private:
  int num_facilities_ = 0;
  int num_clients_ = 0;
  std::vector<double> x_;
  std::vector<double> y_;
};

// Throws kInfeasible when the LP has no solution and kInternal when the
// solver reports unboundedness or hits its iteration limit.
FractionalSolution SolveRelaxation(const Instance& inst,
                                   const SimplexOptions& options = {});

// C^_j = sum_i x_ij c(i, j). Throws kInput for an unknown client.
double AverageConnectionCost(const Instance& inst,
                             const FractionalSolution& frac, int j);

// Names of violated FractionalSolution invariants; empty when valid.
std::vector<std::string> CheckFractional(const Instance& inst,
                                         const FractionalSolution& frac);

}  // namespace lbubfl

#endif  // LBUBFL_LP_H_
