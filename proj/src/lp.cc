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

#include "lbubfl/lp.h"

#include <algorithm>
#include <sstream>

namespace lbubfl {

double FractionalSolution::ClientMass(int j) const {
  double m = 0.0;
  for (int i = 0; i < num_facilities_; ++i) m += x(i, j);
  return m;
}

double FractionalSolution::FacilityLoad(int i) const {
  double m = 0.0;
  for (int j = 0; j < num_clients_; ++j) m += x(i, j);
  return m;
}

Relaxation BuildRelaxation(const Instance& inst) {
  RequireCountingFeasible(inst);
  Relaxation rel;
  const int F = inst.num_facilities();
  const int C = inst.num_clients();
  rel.num_facilities = F;
  rel.num_clients = C;
  LpProblem& lp = rel.problem;
  for (int i = 0; i < F; ++i) {
    lp.AddVar("y_" + std::to_string(i), inst.open_cost(i), 1.0);
  }
  for (int i = 0; i < F; ++i) {
    for (int j = 0; j < C; ++j) {
      lp.AddVar("x_" + std::to_string(i) + "_" + std::to_string(j),
                inst.Cost(i, j), 1.0);
    }
  }
  for (int j = 0; j < C; ++j) {
    LinearRow row{"cover_" + std::to_string(j), {}, RowSense::kGreaterEqual, 1.0};
    for (int i = 0; i < F; ++i) row.terms.push_back({rel.XVar(i, j), 1.0});
    lp.rows.push_back(std::move(row));
  }
  for (int i = 0; i < F; ++i) {
    LinearRow up{"upper_" + std::to_string(i), {}, RowSense::kLessEqual, 0.0};
    LinearRow lo{"lower_" + std::to_string(i), {}, RowSense::kGreaterEqual, 0.0};
    for (int j = 0; j < C; ++j) {
      up.terms.push_back({rel.XVar(i, j), 1.0});
      lo.terms.push_back({rel.XVar(i, j), 1.0});
    }
    up.terms.push_back({rel.YVar(i), -static_cast<double>(inst.upper())});
    lo.terms.push_back({rel.YVar(i), -static_cast<double>(inst.lower())});
    lp.rows.push_back(std::move(up));
    lp.rows.push_back(std::move(lo));
  }
  for (int i = 0; i < F; ++i) {
    for (int j = 0; j < C; ++j) {
      LinearRow link{"link_" + std::to_string(i) + "_" + std::to_string(j),
                     {{rel.XVar(i, j), 1.0}, {rel.YVar(i), -1.0}},
                     RowSense::kLessEqual,
                     0.0,
                     /*lazy=*/true};
      lp.rows.push_back(std::move(link));
    }
  }
  return rel;
}

FractionalSolution SolveRelaxation(const Instance& inst,
                                   const SimplexOptions& options) {
  Relaxation rel = BuildRelaxation(inst);
  LpResult res = SolveLp(rel.problem, options);
  switch (res.status) {
    case LpStatus::kOptimal:
      break;
    case LpStatus::kInfeasible:
      throw Error(ErrorKind::kInfeasible, "LP relaxation is infeasible");
    case LpStatus::kUnbounded:
      throw Error(ErrorKind::kInternal, "LP relaxation reported unbounded");
    case LpStatus::kIterationLimit:
      throw Error(ErrorKind::kInternal, "simplex iteration limit reached");
  }
  FractionalSolution frac(inst.num_facilities(), inst.num_clients());
  for (int i = 0; i < inst.num_facilities(); ++i) {
    frac.y(i) = res.values[rel.YVar(i)];
    for (int j = 0; j < inst.num_clients(); ++j) {
      frac.x(i, j) = res.values[rel.XVar(i, j)];
    }
  }
  frac.objective = res.objective;
  return frac;
}

double AverageConnectionCost(const Instance& inst,
                             const FractionalSolution& frac, int j) {
  if (j < 0 || j >= frac.num_clients()) {
    throw Error(ErrorKind::kInput, "unknown client index " + std::to_string(j));
  }
  double c = 0.0;
  for (int i = 0; i < frac.num_facilities(); ++i) {
    c += frac.x(i, j) * inst.Cost(i, j);
  }
  return c;
}

std::vector<std::string> CheckFractional(const Instance& inst,
                                         const FractionalSolution& frac) {
  std::vector<std::string> bad;
  for (int j = 0; j < frac.num_clients(); ++j) {
    if (frac.ClientMass(j) < 1.0 - kLpFeasibilityTol) {
      bad.push_back("coverage of client " + std::to_string(j));
    }
  }
  for (int i = 0; i < frac.num_facilities(); ++i) {
    double load = frac.FacilityLoad(i);
    if (load < inst.lower() * frac.y(i) - kLpFeasibilityTol ||
        load > inst.upper() * frac.y(i) + kLpFeasibilityTol) {
      bad.push_back("load coupling of facility " + std::to_string(i));
    }
    for (int j = 0; j < frac.num_clients(); ++j) {
      if (frac.x(i, j) > frac.y(i) + 1e-9) {
        bad.push_back("x <= y for (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
      }
    }
  }
  return bad;
}

}  // namespace lbubfl
