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

// Dense tableau simplex with bounded variables.
//
// Every row is stored as g.x + s (+/- w) = b with slack s in [0, ub_s]
// (ub_s = 0 for equalities) and an optional artificial w >= 0. Rows can be
// appended to a solved tableau; the new row is expressed in the current
// basis and, when the incumbent violates it, its artificial restarts phase 1
// from the current vertex.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lbubfl/lp.h"

namespace lbubfl {
namespace {

constexpr double kReducedCostTol = 1e-9;

enum class ColumnKind { kStructural, kSlack, kArtificial };

class DenseSimplex {
 public:
  DenseSimplex(const LpProblem& lp, const SimplexOptions& options)
      : lp_(lp), options_(options) {
    for (int j = 0; j < lp.num_vars(); ++j) {
      AddColumn(ColumnKind::kStructural, lp.upper[j], lp.objective[j]);
    }
  }

  void AddRow(const LinearRow& row) {
    double sign = row.sense == RowSense::kGreaterEqual ? -1.0 : 1.0;
    double rhs = sign * row.rhs;
    double slack_ub = row.sense == RowSense::kEqual ? 0.0 : kLpInfinity;

    // Dense copy over current columns, then reduce against the basis.
    std::vector<double> g(columns(), 0.0);
    for (const LinearTerm& t : row.terms) g[t.var] += sign * t.coef;
    double activity = 0.0;
    for (const LinearTerm& t : row.terms) {
      activity += sign * t.coef * Value(t.var);
    }
    for (int i = 0; i < rows(); ++i) {
      double f = g[basis_[i]];
      if (f == 0.0) continue;
      const std::vector<double>& src = tableau_[i];
      for (int j : nonzeros_[i]) g[j] -= f * src[j];
    }
    const double v = rhs - activity;
    const int s = AddColumn(ColumnKind::kSlack, slack_ub, 0.0);
    g.resize(columns(), 0.0);
    g[s] = 1.0;
    int basic = s;
    double value = v;
    if (v < -kLpFeasibilityTol || v > slack_ub + kLpFeasibilityTol) {
      const double sigma = v > 0 ? 1.0 : -1.0;
      const int w = AddColumn(ColumnKind::kArtificial, kLpInfinity, 0.0);
      g.resize(columns(), 0.0);
      g[w] = sigma;
      if (sigma < 0) {
        for (double& e : g) e = -e;
      }
      basic = w;
      value = std::abs(v);
      needs_phase1_ = true;
    } else {
      value = std::clamp(v, 0.0, slack_ub);
    }
    tableau_.push_back(std::move(g));
    basis_.push_back(basic);
    beta_.push_back(value);
    is_basic_[basic] = true;
    row_of_[basic] = rows() - 1;
    nonzeros_.emplace_back();
    RefreshNonzeros(rows() - 1);
  }

  LpStatus Solve(int* iterations) {
    if (needs_phase1_) {
      std::vector<double> phase1(columns(), 0.0);
      for (int j = 0; j < columns(); ++j) {
        if (kind_[j] == ColumnKind::kArtificial) phase1[j] = 1.0;
      }
      LpStatus status = Run(phase1, iterations);
      if (status != LpStatus::kOptimal) return status;
      double infeasibility = 0.0;
      for (int i = 0; i < rows(); ++i) {
        if (kind_[basis_[i]] == ColumnKind::kArtificial) {
          infeasibility += beta_[i];
        }
      }
      if (infeasibility > kLpFeasibilityTol * std::max(1.0, rhs_scale_)) {
        return LpStatus::kInfeasible;
      }
      // Artificials stay in the tableau but are pinned at zero.
      for (int j = 0; j < columns(); ++j) {
        if (kind_[j] == ColumnKind::kArtificial) upper_[j] = 0.0;
      }
      for (int i = 0; i < rows(); ++i) {
        if (kind_[basis_[i]] == ColumnKind::kArtificial) beta_[i] = 0.0;
      }
      needs_phase1_ = false;
    }
    return Run(cost_, iterations);
  }

  double Value(int j) const {
    if (is_basic_[j]) return beta_[row_of_[j]];
    return at_upper_[j] ? upper_[j] : 0.0;
  }

  std::vector<double> StructuralValues() const {
    std::vector<double> out(lp_.num_vars(), 0.0);
    for (int j = 0; j < lp_.num_vars(); ++j) {
      if (!is_basic_[j]) out[j] = at_upper_[j] ? upper_[j] : 0.0;
    }
    for (int i = 0; i < rows(); ++i) {
      if (basis_[i] < lp_.num_vars()) out[basis_[i]] = beta_[i];
    }
    for (int j = 0; j < lp_.num_vars(); ++j) {
      out[j] = std::clamp(out[j], 0.0, upper_[j]);
    }
    return out;
  }

  void NoteRhs(double rhs) { rhs_scale_ = std::max(rhs_scale_, std::abs(rhs)); }
  int rows() const { return static_cast<int>(tableau_.size()); }
  int columns() const { return static_cast<int>(kind_.size()); }

 private:
  int AddColumn(ColumnKind kind, double ub, double cost) {
    kind_.push_back(kind);
    upper_.push_back(ub);
    cost_.push_back(cost);
    is_basic_.push_back(false);
    at_upper_.push_back(false);
    row_of_.push_back(-1);
    for (std::vector<double>& row : tableau_) row.push_back(0.0);
    return columns() - 1;
  }

  void RefreshNonzeros(int i) {
    std::vector<int>& nz = nonzeros_[i];
    nz.clear();
    const std::vector<double>& row = tableau_[i];
    for (int j = 0; j < columns(); ++j) {
      if (row[j] != 0.0) nz.push_back(j);
    }
  }

  LpStatus Run(const std::vector<double>& cost, int* iterations) {
    const int n = columns();
    std::vector<double> d(cost.begin(), cost.end());
    d.resize(n, 0.0);
    for (int i = 0; i < rows(); ++i) {
      double cb = basis_[i] < static_cast<int>(cost.size()) ? cost[basis_[i]] : 0.0;
      if (cb == 0.0) continue;
      for (int j : nonzeros_[i]) d[j] -= cb * tableau_[i][j];
    }
    int stalled = 0;
    std::vector<double> column(rows());
    while (true) {
      if (*iterations >= options_.max_iterations) {
        return LpStatus::kIterationLimit;
      }
      const bool bland = stalled >= options_.stall_limit;
      int q = -1;
      double best = 0.0;
      for (int j = 0; j < n; ++j) {
        if (is_basic_[j] || upper_[j] <= 0.0) continue;
        double score = 0.0;
        if (!at_upper_[j] && d[j] < -kReducedCostTol) score = -d[j];
        if (at_upper_[j] && d[j] > kReducedCostTol) score = d[j];
        if (score <= 0.0) continue;
        if (bland) {
          q = j;
          break;
        }
        if (score > best) {
          best = score;
          q = j;
        }
      }
      if (q < 0) return LpStatus::kOptimal;
      const double dir = at_upper_[q] ? -1.0 : 1.0;

      int r = -1;
      double t_min = kLpInfinity;
      bool r_to_upper = false;
      for (int i = 0; i < rows(); ++i) {
        double a = tableau_[i][q];
        column[i] = a;
        if (std::abs(a) <= kLpPivotTol) continue;
        const double rate = -dir * a;  // d beta_i / d t
        const int b = basis_[i];
        double limit;
        bool to_upper;
        if (rate < 0) {
          limit = std::max(beta_[i], 0.0) / -rate;
          to_upper = false;
        } else {
          if (!std::isfinite(upper_[b])) continue;
          limit = std::max(upper_[b] - beta_[i], 0.0) / rate;
          to_upper = true;
        }
        bool take = false;
        if (r < 0 || limit < t_min - 1e-12) {
          take = true;
        } else if (limit <= t_min + 1e-12) {
          take = bland ? b < basis_[r] : std::abs(a) > std::abs(column[r]);
        }
        if (take) {
          r = i;
          t_min = limit;
          r_to_upper = to_upper;
        }
      }
      ++*iterations;
      const double flip = upper_[q];
      if (r < 0 && !std::isfinite(flip)) return LpStatus::kUnbounded;
      if (std::isfinite(flip) && (r < 0 || flip <= t_min)) {
        for (int i = 0; i < rows(); ++i) beta_[i] -= dir * column[i] * flip;
        at_upper_[q] = !at_upper_[q];
        stalled = flip > 1e-12 ? 0 : stalled + 1;
        continue;
      }
      const double t = t_min;
      for (int i = 0; i < rows(); ++i) beta_[i] -= dir * column[i] * t;
      const double entering = (at_upper_[q] ? upper_[q] : 0.0) + dir * t;
      const int leaving = basis_[r];
      is_basic_[leaving] = false;
      at_upper_[leaving] = r_to_upper;
      is_basic_[q] = true;
      at_upper_[q] = false;
      basis_[r] = q;
      row_of_[q] = r;
      row_of_[leaving] = -1;
      beta_[r] = entering;
      Pivot(r, q, &d);
      stalled = t > 1e-12 ? 0 : stalled + 1;
    }
  }

  void Pivot(int r, int q, std::vector<double>* d) {
    std::vector<double>& prow = tableau_[r];
    const double inv = 1.0 / prow[q];
    for (int j : nonzeros_[r]) prow[j] *= inv;
    prow[q] = 1.0;
    RefreshNonzeros(r);
    const std::vector<int>& nz = nonzeros_[r];
    for (int i = 0; i < rows(); ++i) {
      if (i == r) continue;
      std::vector<double>& row = tableau_[i];
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j : nz) row[j] -= f * prow[j];
      row[q] = 0.0;
      RefreshNonzerosAfterUpdate(i, nz);
    }
    const double fd = (*d)[q];
    if (fd != 0.0) {
      for (int j : nz) (*d)[j] -= fd * prow[j];
      (*d)[q] = 0.0;
    }
  }

  // Merges the pivot row pattern into row i's pattern and drops zeros.
  void RefreshNonzerosAfterUpdate(int i, const std::vector<int>& pattern) {
    std::vector<int>& nz = nonzeros_[i];
    merged_.clear();
    std::set_union(nz.begin(), nz.end(), pattern.begin(), pattern.end(),
                   std::back_inserter(merged_));
    nz.clear();
    std::vector<double>& row = tableau_[i];
    for (int j : merged_) {
      if (std::abs(row[j]) < 1e-14) {
        row[j] = 0.0;
      } else {
        nz.push_back(j);
      }
    }
  }

  const LpProblem& lp_;
  SimplexOptions options_;
  std::vector<ColumnKind> kind_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<char> is_basic_;
  std::vector<char> at_upper_;
  std::vector<std::vector<double>> tableau_;
  std::vector<std::vector<int>> nonzeros_;
  std::vector<int> basis_;
  std::vector<int> row_of_;
  std::vector<double> beta_;
  std::vector<int> merged_;
  bool needs_phase1_ = false;
  double rhs_scale_ = 1.0;
};

double RowActivity(const LinearRow& row, const std::vector<double>& x) {
  double a = 0.0;
  for (const LinearTerm& t : row.terms) a += t.coef * x[t.var];
  return a;
}

bool Violated(const LinearRow& row, const std::vector<double>& x) {
  const double a = RowActivity(row, x);
  const double tol = kLpFeasibilityTol * 1e-2 * std::max(1.0, std::abs(row.rhs));
  switch (row.sense) {
    case RowSense::kLessEqual:
      return a > row.rhs + tol;
    case RowSense::kGreaterEqual:
      return a < row.rhs - tol;
    case RowSense::kEqual:
      return std::abs(a - row.rhs) > tol;
  }
  return false;
}

}  // namespace

int LpProblem::AddVar(const std::string& name, double cost, double ub) {
  var_names.push_back(name);
  objective.push_back(cost);
  upper.push_back(ub);
  return num_vars() - 1;
}

LpResult SolveLp(const LpProblem& lp, const SimplexOptions& options) {
  LpResult result;
  DenseSimplex simplex(lp, options);
  std::vector<char> added(lp.num_rows(), 0);
  for (int r = 0; r < lp.num_rows(); ++r) {
    simplex.NoteRhs(lp.rows[r].rhs);
    if (!lp.rows[r].lazy) {
      simplex.AddRow(lp.rows[r]);
      added[r] = 1;
    }
  }
  while (true) {
    ++result.lazy_rounds;
    result.status = simplex.Solve(&result.iterations);
    if (result.status != LpStatus::kOptimal) break;
    result.values = simplex.StructuralValues();
    bool any = false;
    for (int r = 0; r < lp.num_rows(); ++r) {
      if (added[r] || !Violated(lp.rows[r], result.values)) continue;
      simplex.AddRow(lp.rows[r]);
      added[r] = 1;
      any = true;
    }
    if (!any) break;
  }
  result.active_rows = simplex.rows();
  if (result.status == LpStatus::kOptimal) {
    result.objective = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) {
      result.objective += lp.objective[j] * result.values[j];
    }
  }
  return result;
}

std::string ExportLpFormat(const LpProblem& lp) {
  std::ostringstream out;
  out.precision(17);
  auto name = [&](int j) {
    return lp.var_names.size() > static_cast<size_t>(j) && !lp.var_names[j].empty()
               ? lp.var_names[j]
               : "v" + std::to_string(j);
  };
  auto terms = [&](const std::vector<LinearTerm>& ts) {
    bool first = true;
    for (const LinearTerm& t : ts) {
      if (t.coef == 0.0) continue;
      out << (t.coef < 0 ? " - " : (first ? " " : " + ")) << std::abs(t.coef)
          << " " << name(t.var);
      first = false;
    }
    if (first) out << " 0 " << name(0);
  };
  out << "\\ lbubfl relaxation export\nMinimize\n obj:";
  std::vector<LinearTerm> obj;
  for (int j = 0; j < lp.num_vars(); ++j) obj.push_back({j, lp.objective[j]});
  terms(obj);
  out << "\nSubject To\n";
  for (int r = 0; r < lp.num_rows(); ++r) {
    const LinearRow& row = lp.rows[r];
    out << " " << (row.name.empty() ? "r" + std::to_string(r) : row.name) << ":";
    terms(row.terms);
    switch (row.sense) {
      case RowSense::kLessEqual:
        out << " <= ";
        break;
      case RowSense::kGreaterEqual:
        out << " >= ";
        break;
      case RowSense::kEqual:
        out << " = ";
        break;
    }
    out << row.rhs << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (std::isfinite(lp.upper[j])) {
      out << " 0 <= " << name(j) << " <= " << lp.upper[j] << "\n";
    } else {
      out << " " << name(j) << " >= 0\n";
    }
  }
  out << "End\n";
  return out.str();
}

}  // namespace lbubfl
