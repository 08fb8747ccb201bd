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

// Brute-force reference for small instances.
//
// Nothing here uses the classification, the closed-form inverse or the
// enumeration of the solver; only phi is shared. Per-column solvability is
// decided by the intermediate value theorem on phi(a, .) over [0,1] and the
// solving x is found by bisection.

#ifndef WPMFRE_ORACLE_HPP_
#define WPMFRE_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wpmfre/common.hpp"
#include "wpmfre/fre_model.hpp"
#include "wpmfre/wpm_operator.hpp"

namespace wpmfre::oracle {

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

struct MembershipResult {
  bool member = false;
  std::vector<double> residuals;

  double max_residual() const {
    return residuals.empty()
               ? 0.0
               : *std::max_element(residuals.begin(), residuals.end());
  }
};

inline MembershipResult CheckMembership(const Problem& problem,
                                        const std::vector<double>& x,
                                        double tol) {
  if (x.size() != problem.n()) {
    throw DimensionError("point has " + std::to_string(x.size()) +
                         " entries, problem has " +
                         std::to_string(problem.n()) + " columns");
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] >= 0.0 && x[j] <= 1.0)) {
      throw DomainError("x[" + std::to_string(j + 1) + "] outside [0,1]");
    }
  }
  MembershipResult out;
  out.member = true;
  for (std::size_t i = 0; i < problem.m(); ++i) {
    double comp = 0.0;
    for (std::size_t j = 0; j < problem.n(); ++j) {
      comp = std::max(comp, Phi(problem.a()(i, j), x[j], problem.params()));
    }
    const double r = std::abs(comp - problem.b()[i]);
    out.residuals.push_back(r);
    if (r > tol) out.member = false;
  }
  return out;
}

struct GridSpec {
  std::size_t points_per_axis = 21;
  double residual_tolerance = 1e-3;
  std::uint64_t budget = kDefaultOracleBudget;
};

// Every point of the uniform grid {0, 1/(k-1), ..., 1}^n passing
// CheckMembership at grid.residual_tolerance, in odometer order (last
// coordinate fastest).
inline std::vector<std::vector<double>> GridFeasibleSet(const Problem& problem,
                                                        const GridSpec& grid) {
  if (grid.points_per_axis < 2) {
    throw PreconditionError("grid needs at least 2 points per axis");
  }
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < problem.n(); ++j) {
    total = SaturatingMultiply(total, grid.points_per_axis);
  }
  if (total > grid.budget) {
    throw BudgetError("grid has " + std::to_string(total) +
                          " points, oracle budget is " +
                          std::to_string(grid.budget),
                      total, grid.budget);
  }
  const double step = 1.0 / static_cast<double>(grid.points_per_axis - 1);
  std::vector<std::size_t> idx(problem.n(), 0);
  std::vector<double> x(problem.n(), 0.0);
  std::vector<std::vector<double>> out;
  for (std::uint64_t k = 0; k < total; ++k) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = idx[j] + 1 == grid.points_per_axis
                 ? 1.0
                 : static_cast<double>(idx[j]) * step;
    }
    if (CheckMembership(problem, x, grid.residual_tolerance).member) {
      out.push_back(x);
    }
    for (std::size_t j = x.size(); j-- > 0;) {
      if (++idx[j] < grid.points_per_axis) break;
      idx[j] = 0;
    }
  }
  return out;
}

// Solves phi(a, x) = b on [0,1] by bisection, assuming
// phi(a,0) <= b <= phi(a,1).
inline double BisectSecondArgument(double a, double b,
                                   const WpmParams& params) {
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (Phi(a, mid, params) < b) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct OracleCandidate {
  std::vector<std::size_t> e;  // 0-based column per row
  std::vector<double> point;
  bool feasible = false;
};

struct OracleResult {
  bool feasible = false;
  // Per row, the columns that can hit b_i exactly; empty if the row has an
  // entry overshooting b_i at x = 0.
  std::vector<std::vector<std::size_t>> solvable_columns;
  std::vector<double> x_max;
  std::vector<OracleCandidate> candidates;
};

// Enumerates every choice of one solvable column per row with nested loops
// (recursion), with no simplification and no deduplication. `tol` widens
// the solvability test and bounds the residual of a feasible candidate.
inline OracleResult ExhaustiveCandidates(
    const Problem& problem, double tol = kClassifyTol,
    std::uint64_t budget = kDefaultOracleBudget) {
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  const WpmParams& params = problem.params();
  OracleResult out;
  out.solvable_columns.resize(m);
  out.x_max.assign(n, 1.0);

  // hit[i][j]: the x_j solving row i's column j equation.
  std::vector<std::vector<double>> hit(m, std::vector<double>(n, -1.0));
  bool rows_ok = true;
  for (std::size_t i = 0; i < m; ++i) {
    const double b = problem.b()[i];
    bool overshoot = false;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = problem.a()(i, j);
      const double at0 = Phi(a, 0.0, params);
      const double at1 = Phi(a, 1.0, params);
      if (at0 > b + tol) {
        overshoot = true;
      } else if (at1 >= b - tol) {
        hit[i][j] = at0 >= b ? 0.0 : BisectSecondArgument(a, b, params);
        out.solvable_columns[i].push_back(j);
        out.x_max[j] = std::min(out.x_max[j], hit[i][j]);
      }
    }
    if (overshoot) out.solvable_columns[i].clear();
    if (out.solvable_columns[i].empty()) rows_ok = false;
  }
  if (!rows_ok) return out;

  std::uint64_t total = 1;
  for (const auto& cols : out.solvable_columns) {
    total = SaturatingMultiply(total, cols.size());
  }
  if (total > budget) {
    throw BudgetError("oracle enumeration of " + std::to_string(total) +
                          " vectors exceeds budget",
                      total, budget);
  }

  std::vector<std::size_t> e(m, 0);
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == m) {
      OracleCandidate cand;
      cand.e = e;
      cand.point.assign(n, 0.0);
      for (std::size_t r = 0; r < m; ++r) {
        cand.point[e[r]] = std::max(cand.point[e[r]], hit[r][e[r]]);
      }
      // Judged by residual: near x = 0 phi is flat in x, so comparing the
      // point against x_max coordinatewise is ill-conditioned.
      cand.feasible = CheckMembership(problem, cand.point, tol).member;
      if (cand.feasible) out.feasible = true;
      out.candidates.push_back(std::move(cand));
      return;
    }
    for (std::size_t j : out.solvable_columns[i]) {
      e[i] = j;
      self(self, i + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace wpmfre::oracle

#endif  // WPMFRE_ORACLE_HPP_
