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

// Zeroing of matrix entries that cannot influence the solution set.
//
// First rule: an entry whose column is inert for its row (phi(a_ij, 1) < b_i)
// can be reset to 0.
//
// Second rule: an active entry a_kj can be reset to 0 when another row i
// also has j active and
//
//   b_i^p - b_k^p < w (a_ij^p - a_kj^p),
//
// i.e. the value x_j = Xmin(k,j)_j that row k would need exceeds the bound
// Xmax(i)_j imposed by row i.

#ifndef WPMFRE_SIMPLIFICATION_HPP_
#define WPMFRE_SIMPLIFICATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wpmfre/common.hpp"
#include "wpmfre/fre_model.hpp"
#include "wpmfre/solution_lattice.hpp"

namespace wpmfre {

enum class SimplificationRule { kFirst, kSecond };

inline std::string_view RuleName(SimplificationRule rule) {
  return rule == SimplificationRule::kFirst ? "first" : "second";
}

struct SimplificationEntry {
  SimplificationRule rule = SimplificationRule::kFirst;
  std::size_t row = 0;
  std::size_t column = 0;
  double old_value = 0.0;
  // Second rule only: the row i that dominates (row, column).
  std::optional<std::size_t> witness_row;

  bool operator==(const SimplificationEntry&) const = default;
};

struct SimplificationLog {
  std::vector<SimplificationEntry> entries;
  std::uint64_t choice_space_before = 0;
  std::uint64_t choice_space_after = 0;
};

struct SimplifyResult {
  Problem problem;
  SimplificationLog log;
  std::vector<RowClassification> rows;  // classification of `problem`
};

struct SimplifyOptions {
  // Repeat both rules until neither changes the matrix.
  bool fixpoint = false;
};

namespace internal {

inline void RequireFeasibleRows(const std::vector<RowClassification>& classes) {
  if (!AllRowsFeasible(classes)) {
    throw PreconditionError("simplification needs every row feasible");
  }
}

inline SimplifyResult Finish(const Problem& original, Matrix a,
                             const std::vector<RowClassification>& before,
                             std::vector<SimplificationEntry> entries) {
  Problem simplified = original.WithMatrix(std::move(a));
  std::vector<RowClassification> after = ClassifyRows(simplified);
  SimplificationLog log;
  log.entries = std::move(entries);
  log.choice_space_before = ChoiceSpaceSize(before);
  log.choice_space_after = ChoiceSpaceSize(after);
  return {std::move(simplified), std::move(log), std::move(after)};
}

}  // namespace internal

inline SimplifyResult SimplifyFirst(
    const Problem& problem, const std::vector<RowClassification>& classes) {
  internal::RequireFeasibleRows(classes);
  Matrix a = problem.a();
  std::vector<SimplificationEntry> entries;
  for (const auto& cls : classes) {
    for (std::size_t j : cls.j_infinity) {
      if (a(cls.row, j) == 0.0) continue;
      entries.push_back(
          {SimplificationRule::kFirst, cls.row, j, a(cls.row, j), std::nullopt});
      a(cls.row, j) = 0.0;
    }
  }
  return internal::Finish(problem, std::move(a), classes, std::move(entries));
}

// All eligible (k, j) pairs are found on the input matrix, then zeroed
// together. The strict inequality carries margin kClassifyTol; it says
// Xmin(k,j)_j^p exceeds Xmax(i)_j^p by more than kClassifyTol / (1 - w), so
// every choice vector it prunes would fail the candidate feasibility test.
inline SimplifyResult SimplifySecond(
    const Problem& problem, const std::vector<RowClassification>& classes) {
  internal::RequireFeasibleRows(classes);
  const WpmParams& params = problem.params();
  const double p = params.p();
  const double w = params.w();
  const Matrix& a = problem.a();

  std::vector<std::vector<bool>> active(problem.m(),
                                        std::vector<bool>(problem.n(), false));
  for (const auto& cls : classes) {
    for (std::size_t j : cls.j_active) active[cls.row][j] = true;
  }

  Matrix out = a;
  std::vector<SimplificationEntry> entries;
  for (std::size_t k = 0; k < problem.m(); ++k) {
    const double bk_p = std::pow(problem.b()[k], p);
    for (std::size_t j = 0; j < problem.n(); ++j) {
      if (!active[k][j] || a(k, j) == 0.0) continue;
      const double akj_p = std::pow(a(k, j), p);
      for (std::size_t i = 0; i < problem.m(); ++i) {
        if (i == k || !active[i][j]) continue;
        const double lhs = std::pow(problem.b()[i], p) - bk_p;
        const double rhs = w * (std::pow(a(i, j), p) - akj_p);
        if (!(lhs < rhs - kClassifyTol)) continue;
        entries.push_back({SimplificationRule::kSecond, k, j, a(k, j), i});
        out(k, j) = 0.0;
        break;
      }
    }
  }
  return internal::Finish(problem, std::move(out), classes, std::move(entries));
}

// First rule, then second rule, once each (or until nothing changes with
// options.fixpoint). The log's |E| counts span the whole pipeline.
inline SimplifyResult SimplifyPipeline(const Problem& problem,
                                       const SimplifyOptions& options = {}) {
  const std::vector<RowClassification> initial = ClassifyRows(problem);
  internal::RequireFeasibleRows(initial);

  SimplifyResult first = SimplifyFirst(problem, initial);
  SimplifyResult second = SimplifySecond(first.problem, first.rows);

  std::vector<SimplificationEntry> entries = std::move(first.log.entries);
  entries.insert(entries.end(), second.log.entries.begin(),
                 second.log.entries.end());
  SimplifyResult current = std::move(second);

  if (options.fixpoint) {
    for (;;) {
      const std::size_t before = entries.size();
      SimplifyResult a = SimplifyFirst(current.problem, current.rows);
      SimplifyResult b = SimplifySecond(a.problem, a.rows);
      entries.insert(entries.end(), a.log.entries.begin(),
                     a.log.entries.end());
      entries.insert(entries.end(), b.log.entries.begin(),
                     b.log.entries.end());
      current = std::move(b);
      if (entries.size() == before) break;
    }
  }

  current.log.entries = std::move(entries);
  current.log.choice_space_before = ChoiceSpaceSize(initial);
  current.log.choice_space_after = ChoiceSpaceSize(current.rows);
  return current;
}

}  // namespace wpmfre

#endif  // WPMFRE_SIMPLIFICATION_HPP_
