// Copyright 2026 The wpmfre Authors
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

// Linear objective over S(A,b).
//
// With c = c+ + c- (c+ >= 0, c- <= 0), Xmax minimizes c-.x over S(A,b) and
// some candidate Xmin(e*) minimizes c+.x. The optimum takes Xmax_j where
// c_j < 0 and Xmin(e*)_j where c_j >= 0; it lies in [Xmin(e*), Xmax] and is
// therefore feasible.

#ifndef WPMFRE_OPTIMIZER_HPP_
#define WPMFRE_OPTIMIZER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wpmfre/common.hpp"
#include "wpmfre/fre_model.hpp"
#include "wpmfre/simplification.hpp"
#include "wpmfre/solution_lattice.hpp"

namespace wpmfre {

struct CostSplit {
  std::vector<double> c_plus;   // max(c_j, 0)
  std::vector<double> c_minus;  // min(c_j, 0)

  static CostSplit From(std::span<const double> c) {
    CostSplit out;
    out.c_plus.reserve(c.size());
    out.c_minus.reserve(c.size());
    for (double v : c) {
      out.c_plus.push_back(std::max(v, 0.0));
      out.c_minus.push_back(std::min(v, 0.0));
    }
    return out;
  }
};

inline double Dot(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DimensionError("dot product size mismatch");
  return std::inner_product(u.begin(), u.end(), v.begin(), 0.0);
}

struct Z2Solution {
  ChoiceVector e;
  std::vector<double> point;
  double value = 0.0;
};

// Minimizes c_plus.Xmin(e) over the given feasible candidates. Exact ties go
// to the lexicographically smallest e.
inline Z2Solution SolveZ2(std::span<const CandidateMinimal> candidates,
                          std::span<const double> c_plus) {
  const CandidateMinimal* best = nullptr;
  double best_value = 0.0;
  for (const auto& cand : candidates) {
    if (!cand.feasible) continue;
    const double value = Dot(c_plus, cand.point);
    if (best == nullptr || value < best_value ||
        (value == best_value && cand.e < best->e)) {
      best = &cand;
      best_value = value;
    }
  }
  if (best == nullptr) {
    throw PreconditionError("no feasible candidate minimal solution");
  }
  return {best->e, best->point, best_value};
}

inline std::vector<double> AssembleOptimum(std::span<const double> x_max,
                                           std::span<const double> x_min_star,
                                           std::span<const double> c) {
  if (x_max.size() != c.size() || x_min_star.size() != c.size()) {
    throw DimensionError("optimum assembly size mismatch");
  }
  std::vector<double> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    out[j] = c[j] < 0.0 ? x_max[j] : x_min_star[j];
  }
  return out;
}

struct SolveOptions {
  bool simplify = true;
  bool fixpoint = false;
  std::uint64_t limit = kDefaultEnumerationLimit;
  unsigned threads = 1;
};

// Why a problem was found infeasible.
struct InfeasibilityDiagnostic {
  enum class Kind {
    kEntryTooLarge,     // some a_ij > b_i / w^(1/p)
    kNoActiveColumn,    // no column of row i can reach b_i
    kMaxNotASolution,   // every row solvable but Xmax misses some b_i
  };
  Kind kind = Kind::kEntryTooLarge;
  std::optional<std::size_t> row;
  std::vector<std::size_t> columns;
  std::vector<double> residuals;
};

inline std::string_view KindName(InfeasibilityDiagnostic::Kind kind) {
  switch (kind) {
    case InfeasibilityDiagnostic::Kind::kEntryTooLarge:
      return "entry_too_large";
    case InfeasibilityDiagnostic::Kind::kNoActiveColumn:
      return "no_active_column";
    case InfeasibilityDiagnostic::Kind::kMaxNotASolution:
      return "max_not_a_solution";
  }
  return "unknown";
}

struct SolveReport {
  bool feasible = false;
  std::optional<std::vector<double>> x_star;
  std::optional<double> z_star;
  std::optional<ChoiceVector> e_star;
  std::optional<std::vector<double>> x_max;
  std::uint64_t candidates_total = 0;
  std::size_t candidates_feasible = 0;
  // The enumerated candidates (after simplification when enabled).
  std::vector<CandidateMinimal> candidates;
  bool simplified = false;
  SimplificationLog simplification;
  std::optional<InfeasibilityDiagnostic> diagnostic;
  // |composition(a_i, x*) - b_i| against the input problem.
  std::vector<double> residuals;
};

// classify -> feasibility -> simplify -> enumerate -> assemble. Throws
// BudgetError (with the required |E|) when the choice space is too large;
// no partial report is produced in that case.
inline SolveReport Solve(const Problem& problem,
                         const SolveOptions& options = {}) {
  SolveReport report;
  FeasibilityReport feas = CheckFeasibility(problem);
  if (feas.failed_row) {
    const RowClassification& cls = feas.rows[*feas.failed_row];
    InfeasibilityDiagnostic diag;
    diag.row = cls.row;
    if (!cls.j_minus.empty()) {
      diag.kind = InfeasibilityDiagnostic::Kind::kEntryTooLarge;
      diag.columns = cls.j_minus;
    } else {
      diag.kind = InfeasibilityDiagnostic::Kind::kNoActiveColumn;
    }
    report.diagnostic = std::move(diag);
    return report;
  }
  report.x_max = feas.max_solution->global;
  if (!feas.feasible) {
    InfeasibilityDiagnostic diag;
    diag.kind = InfeasibilityDiagnostic::Kind::kMaxNotASolution;
    diag.residuals = feas.residuals;
    for (std::size_t i = 0; i < feas.residuals.size(); ++i) {
      if (feas.residuals[i] > kFeasibilityTol) {
        diag.row = i;
        break;
      }
    }
    report.diagnostic = std::move(diag);
    return report;
  }

  const Problem* working = &problem;
  std::vector<RowClassification> rows = feas.rows;
  std::optional<SimplifyResult> simplified;
  if (options.simplify) {
    simplified = SimplifyPipeline(problem, {.fixpoint = options.fixpoint});
    working = &simplified->problem;
    rows = simplified->rows;
    report.simplified = true;
    report.simplification = simplified->log;
  } else {
    report.simplification.choice_space_before = ChoiceSpaceSize(rows);
    report.simplification.choice_space_after =
        report.simplification.choice_space_before;
  }

  CandidateSet set = EnumerateCandidates(
      *working, rows, {.limit = options.limit, .threads = options.threads});
  report.candidates_total = set.total;
  report.candidates_feasible = set.feasible.size();
  std::vector<CandidateMinimal> feasible = set.FeasibleCandidates();
  report.candidates = std::move(set.all);
  if (feasible.empty()) {
    InfeasibilityDiagnostic diag;
    diag.kind = InfeasibilityDiagnostic::Kind::kMaxNotASolution;
    diag.residuals = feas.residuals;
    report.diagnostic = std::move(diag);
    return report;
  }

  const CostSplit split = CostSplit::From(problem.c());
  Z2Solution z2 = SolveZ2(feasible, split.c_plus);
  std::vector<double> x_star =
      AssembleOptimum(*report.x_max, z2.point, problem.c());

  for (std::size_t i = 0; i < problem.m(); ++i) {
    report.residuals.push_back(std::abs(
        RowComposition(problem.a().row(i), x_star, problem.params()) -
        problem.b()[i]));
    if (report.residuals.back() > kFeasibilityTol) {
      throw NumericalError("assembled optimum violates row " +
                           std::to_string(i + 1));
    }
  }
  report.feasible = true;
  report.z_star = Dot(problem.c(), x_star);
  report.x_star = std::move(x_star);
  report.e_star = std::move(z2.e);
  return report;
}

}  // namespace wpmfre

#endif  // WPMFRE_OPTIMIZER_HPP_
