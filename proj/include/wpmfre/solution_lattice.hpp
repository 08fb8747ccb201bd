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

// Structure of the solution set S(A,b).
//
// Each row i contributes a maximum solution Xmax(i) and one minimal solution
// Xmin(i,j) per active column j; the latter is zero except at j. The global
// maximum Xmax is the componentwise minimum of the Xmax(i). Choosing one
// active column e[i] per row gives a candidate
//
//   Xmin(e)_j = max_i Xmin(i, e[i])_j
//
// and S(A,b) is the union of the boxes [Xmin(e), Xmax] that are non-empty.

#ifndef WPMFRE_SOLUTION_LATTICE_HPP_
#define WPMFRE_SOLUTION_LATTICE_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wpmfre/common.hpp"
#include "wpmfre/fre_model.hpp"
#include "wpmfre/wpm_operator.hpp"

namespace wpmfre {

struct MaxSolution {
  Matrix per_row;              // row i is Xmax(i)
  std::vector<double> global;  // componentwise min over rows
};

// One active column per row, 0-based. Ordered lexicographically.
struct ChoiceVector {
  std::vector<std::size_t> columns;

  auto operator<=>(const ChoiceVector&) const = default;
};

struct CandidateMinimal {
  ChoiceVector e;
  std::vector<double> point;
  // Xmin(e) <= Xmax componentwise, compared as x^p with slack kClassifyTol.
  bool feasible = false;
};

inline std::vector<double> MaxSolutionRow(const Problem& problem,
                                          const RowClassification& cls) {
  if (!RowFeasible(cls)) {
    throw PreconditionError("row " + std::to_string(cls.row + 1) +
                            " has no solution");
  }
  std::vector<double> out(problem.n(), 1.0);
  const double b = problem.b()[cls.row];
  for (std::size_t j : cls.j_active) {
    out[j] = PhiInverseX(problem.a()(cls.row, j), b, problem.params());
  }
  return out;
}

inline std::vector<double> GlobalMaxSolution(const Matrix& per_row) {
  std::vector<double> out(per_row.cols(), 1.0);
  for (std::size_t i = 0; i < per_row.rows(); ++i) {
    for (std::size_t j = 0; j < per_row.cols(); ++j) {
      out[j] = std::min(out[j], per_row(i, j));
    }
  }
  return out;
}

inline MaxSolution BuildMaxSolution(
    const Problem& problem, const std::vector<RowClassification>& classes) {
  MaxSolution out;
  out.per_row = Matrix(problem.m(), problem.n(), 1.0);
  for (const auto& cls : classes) {
    const std::vector<double> row = MaxSolutionRow(problem, cls);
    std::copy(row.begin(), row.end(), out.per_row.row(cls.row).begin());
  }
  out.global = GlobalMaxSolution(out.per_row);
  return out;
}

inline std::vector<double> MinimalSolutionRow(const Problem& problem,
                                              const RowClassification& cls,
                                              std::size_t j) {
  if (!std::binary_search(cls.j_active.begin(), cls.j_active.end(), j)) {
    throw PreconditionError("column " + std::to_string(j + 1) +
                            " is not active in row " +
                            std::to_string(cls.row + 1));
  }
  std::vector<double> out(problem.n(), 0.0);
  out[j] = PhiInverseX(problem.a()(cls.row, j), problem.b()[cls.row],
                       problem.params());
  return out;
}

inline std::vector<double> MinimalSolutionRow(const Problem& problem,
                                              std::size_t i, std::size_t j) {
  return MinimalSolutionRow(problem, ClassifyRow(problem, i), j);
}

// |E| = prod_i |J(i)|, saturating.
inline std::uint64_t ChoiceSpaceSize(
    const std::vector<RowClassification>& classes) {
  std::uint64_t size = 1;
  for (const auto& cls : classes) {
    size = SaturatingMultiply(size, cls.j_active.size());
  }
  return size;
}

struct EnumerationOptions {
  std::uint64_t limit = kDefaultEnumerationLimit;
  unsigned threads = 1;
};

struct CandidateSet {
  std::uint64_t total = 0;
  // Every choice vector, in lexicographic order of e.
  std::vector<CandidateMinimal> all;
  // Indices into `all` of the feasible candidates, one per distinct point
  // (the lexicographically smallest e wins).
  std::vector<std::size_t> feasible;
  std::vector<double> x_max;

  std::vector<CandidateMinimal> FeasibleCandidates() const {
    std::vector<CandidateMinimal> out;
    out.reserve(feasible.size());
    for (std::size_t k : feasible) out.push_back(all[k]);
    return out;
  }
};

namespace internal {

// Expands choice vectors with linear indices [begin, end); the last row is
// the fastest-varying digit.
//
// The feasibility test compares x^p rather than x. phi^p is affine in x^p,
// whereas near x = 0 the inverse is so flat in x that a point solving every
// equation to the last bit can sit 1e-8 above Xmax.
inline void ExpandSlice(const std::vector<RowClassification>& classes,
                        const Matrix& minimal_values,
                        const std::vector<double>& x_max, double p,
                        std::uint64_t begin, std::uint64_t end,
                        std::vector<CandidateMinimal>& out) {
  const std::size_t m = classes.size();
  const std::size_t n = x_max.size();
  std::vector<double> x_max_p(n);
  for (std::size_t j = 0; j < n; ++j) x_max_p[j] = std::pow(x_max[j], p);
  std::vector<std::size_t> digits(m, 0);
  std::uint64_t rest = begin;
  for (std::size_t r = m; r-- > 0;) {
    const std::uint64_t radix = classes[r].j_active.size();
    digits[r] = static_cast<std::size_t>(rest % radix);
    rest /= radix;
  }
  out.reserve(static_cast<std::size_t>(end - begin));
  for (std::uint64_t k = begin; k < end; ++k) {
    CandidateMinimal cand;
    cand.e.columns.resize(m);
    cand.point.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = classes[i].j_active[digits[i]];
      cand.e.columns[i] = j;
      cand.point[j] = std::max(cand.point[j], minimal_values(i, j));
    }
    cand.feasible = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::pow(cand.point[j], p) > x_max_p[j] + kClassifyTol) {
        cand.feasible = false;
        break;
      }
    }
    out.push_back(std::move(cand));
    for (std::size_t r = m; r-- > 0;) {
      if (++digits[r] < classes[r].j_active.size()) break;
      digits[r] = 0;
    }
  }
}

}  // namespace internal

// Materializes every choice vector of prod_i J(i). Throws BudgetError before
// any expansion when |E| exceeds options.limit. The result does not depend
// on options.threads.
inline CandidateSet EnumerateCandidates(
    const Problem& problem, const std::vector<RowClassification>& classes,
    const EnumerationOptions& options = {}) {
  if (!AllRowsFeasible(classes)) {
    throw PreconditionError("candidate enumeration needs every row feasible");
  }
  const std::uint64_t total = ChoiceSpaceSize(classes);
  if (total > options.limit) {
    throw BudgetError("choice space has " +
                          (total == std::numeric_limits<std::uint64_t>::max()
                               ? std::string("more than 2^64-1")
                               : std::to_string(total)) +
                          " vectors, limit is " +
                          std::to_string(options.limit),
                      total, options.limit);
  }
  const MaxSolution max_solution = BuildMaxSolution(problem, classes);

  // Xmin(i,j)_j equals Xmax(i)_j for every active j.
  const Matrix& minimal_values = max_solution.per_row;
  const double p = problem.params().p();

  CandidateSet out;
  out.total = total;
  out.x_max = max_solution.global;

  const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(
      options.threads == 0 ? 1 : options.threads, 1, total));
  if (workers <= 1) {
    internal::ExpandSlice(classes, minimal_values, out.x_max, p, 0, total,
                          out.all);
  } else {
    std::vector<std::vector<CandidateMinimal>> slices(workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned t = 0; t < workers; ++t) {
        const std::uint64_t begin = total * t / workers;
        const std::uint64_t end = total * (t + 1) / workers;
        pool.emplace_back([&, t, begin, end] {
          internal::ExpandSlice(classes, minimal_values, out.x_max, p, begin,
                                end, slices[t]);
        });
      }
    }
    out.all.reserve(static_cast<std::size_t>(total));
    for (auto& slice : slices) {
      for (auto& cand : slice) out.all.push_back(std::move(cand));
    }
  }

  std::map<std::vector<double>, std::size_t> seen;
  for (std::size_t k = 0; k < out.all.size(); ++k) {
    if (!out.all[k].feasible) continue;
    if (seen.emplace(out.all[k].point, k).second) out.feasible.push_back(k);
  }
  return out;
}

// Outcome of the global feasibility test: every row solvable and Xmax
// reproduces b within kFeasibilityTol.
struct FeasibilityReport {
  bool feasible = false;
  std::vector<RowClassification> rows;
  // First row whose single equality has no solution.
  std::optional<std::size_t> failed_row;
  std::optional<MaxSolution> max_solution;
  // |composition(a_i, Xmax) - b_i|; empty when some row failed.
  std::vector<double> residuals;
};

inline FeasibilityReport CheckFeasibility(const Problem& problem) {
  FeasibilityReport report;
  report.rows = ClassifyRows(problem);
  for (const auto& cls : report.rows) {
    if (!RowFeasible(cls)) {
      report.failed_row = cls.row;
      return report;
    }
  }
  report.max_solution = BuildMaxSolution(problem, report.rows);
  const std::vector<double>& x = report.max_solution->global;
  report.feasible = true;
  for (std::size_t i = 0; i < problem.m(); ++i) {
    const double r = std::abs(
        RowComposition(problem.a().row(i), x, problem.params()) -
        problem.b()[i]);
    report.residuals.push_back(r);
    if (r > kFeasibilityTol) report.feasible = false;
  }
  return report;
}

inline bool ProblemFeasible(const Problem& problem) {
  return CheckFeasibility(problem).feasible;
}

}  // namespace wpmfre

#endif  // WPMFRE_SOLUTION_LATTICE_HPP_
