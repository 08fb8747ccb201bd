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

#include "wpmfre/solution_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.hpp"
#include "wpmfre/oracle.hpp"
#include "wpmfre/simplification.hpp"

namespace wpmfre {
namespace {

using testing::kExampleMax;
using testing::kExampleRowMax;

void ExpectNearVector(const std::vector<double>& actual,
                      const std::vector<double>& expected, double tol) {
  ASSERT_EQ(actual.size(), expected.size());
  for (std::size_t j = 0; j < actual.size(); ++j) {
    EXPECT_NEAR(actual[j], expected[j], tol) << "component " << j + 1;
  }
}

TEST(MaxSolutionTest, WorkedExampleRows) {
  const Problem problem = testing::WorkedExample();
  const auto rows = ClassifyRows(problem);
  for (std::size_t i = 0; i < problem.m(); ++i) {
    const std::vector<double> row = MaxSolutionRow(problem, rows[i]);
    ExpectNearVector(row, kExampleRowMax[i], 1e-4);
    EXPECT_NEAR(RowComposition(problem.a().row(i), row, problem.params()),
                problem.b()[i], kFeasibilityTol);
  }
}

TEST(MaxSolutionTest, WorkedExampleGlobal) {
  const Problem problem = testing::WorkedExample();
  const MaxSolution max = BuildMaxSolution(problem, ClassifyRows(problem));
  ExpectNearVector(max.global, kExampleMax, 1e-4);
  for (std::size_t i = 0; i < problem.m(); ++i) {
    for (std::size_t j = 0; j < problem.n(); ++j) {
      EXPECT_LE(max.global[j], max.per_row(i, j));
    }
  }
}

TEST(MaxSolutionTest, OneByOneDiagonal) {
  const Problem problem(Matrix(1, 1, 0.37), {0.37}, {1}, WpmParams(0.2, 1.5));
  const auto rows = ClassifyRows(problem);
  EXPECT_NEAR(MaxSolutionRow(problem, rows[0])[0], 0.37, 1e-12);
}

TEST(MaxSolutionTest, SingleRowAndIdenticalRows) {
  const Problem problem = testing::WorkedExample();
  const auto rows = ClassifyRows(problem);
  const std::vector<double> row = MaxSolutionRow(problem, rows[0]);
  Matrix one(1, problem.n());
  Matrix twice(2, problem.n());
  for (std::size_t j = 0; j < problem.n(); ++j) {
    one(0, j) = row[j];
    twice(0, j) = row[j];
    twice(1, j) = row[j];
  }
  EXPECT_EQ(GlobalMaxSolution(one), row);
  EXPECT_EQ(GlobalMaxSolution(twice), row);
}

TEST(MaxSolutionTest, InfeasibleRowIsPreconditionError) {
  const Problem problem(Matrix(1, 1, 1.0), {0.5}, {0}, WpmParams(0.75, 3.0));
  EXPECT_THROW(MaxSolutionRow(problem, ClassifyRow(problem, 0)),
               PreconditionError);
}

TEST(MinimalSolutionTest, WorkedExampleFirstRow) {
  const Problem problem = testing::WorkedExample();
  ExpectNearVector(MinimalSolutionRow(problem, 0, 1),
                   {0, 0.7552, 0, 0, 0, 0, 0}, 1e-4);
  ExpectNearVector(MinimalSolutionRow(problem, 0, 2),
                   {0, 0, 0.9341, 0, 0, 0, 0}, 1e-4);
  EXPECT_THROW(MinimalSolutionRow(problem, 0, 0), PreconditionError);
}

TEST(MinimalSolutionTest, AgreesWithRowMaximumOnItsColumn) {
  const Problem problem = testing::WorkedExample();
  const auto rows = ClassifyRows(problem);
  for (const auto& cls : rows) {
    const std::vector<double> max = MaxSolutionRow(problem, cls);
    for (std::size_t j : cls.j_active) {
      const std::vector<double> min = MinimalSolutionRow(problem, cls, j);
      EXPECT_EQ(min[j], max[j]);
      EXPECT_NEAR(RowComposition(problem.a().row(cls.row), min,
                                 problem.params()),
                  problem.b()[cls.row], kFeasibilityTol);
    }
  }
}

TEST(EnumerateCandidatesTest, WorkedExampleBeforeSimplification) {
  const Problem problem = testing::WorkedExample();
  const CandidateSet set = EnumerateCandidates(problem, ClassifyRows(problem));
  EXPECT_EQ(set.total, 24u);
  EXPECT_EQ(set.all.size(), 24u);
  EXPECT_TRUE(std::is_sorted(
      set.all.begin(), set.all.end(),
      [](const auto& l, const auto& r) { return l.e < r.e; }));
}

TEST(EnumerateCandidatesTest, WorkedExampleAfterSimplification) {
  const SimplifyResult simplified =
      SimplifyPipeline(testing::WorkedExample());
  const CandidateSet set =
      EnumerateCandidates(simplified.problem, simplified.rows);
  EXPECT_EQ(set.total, 2u);
  ASSERT_EQ(set.feasible.size(), 2u);
  const auto feasible = set.FeasibleCandidates();
  EXPECT_EQ(testing::OneBased(feasible[0].e.columns),
            (std::vector<std::size_t>{2, 1, 5, 3, 4}));
  EXPECT_EQ(testing::OneBased(feasible[1].e.columns),
            (std::vector<std::size_t>{2, 1, 6, 3, 4}));
  ExpectNearVector(feasible[0].point, testing::kExampleMinE2, 1e-4);
  ExpectNearVector(feasible[1].point, testing::kExampleMinE1, 1e-4);
}

TEST(EnumerateCandidatesTest, SingleRowCandidatesAreRowMinimals) {
  const Problem problem(Matrix::FromRows({{0.6763, 0.8969, 0.8403, 0.3}}),
                        {0.8657}, {1, 1, 1, 1}, WpmParams(0.75, 3.0));
  const auto rows = ClassifyRows(problem);
  const CandidateSet set = EnumerateCandidates(problem, rows);
  ASSERT_EQ(set.all.size(), rows[0].j_active.size());
  for (std::size_t k = 0; k < set.all.size(); ++k) {
    EXPECT_TRUE(set.all[k].feasible);
    EXPECT_EQ(set.all[k].point,
              MinimalSolutionRow(problem, rows[0], rows[0].j_active[k]));
  }
}

TEST(EnumerateCandidatesTest, BudgetErrorBeforeExpansion) {
  const Problem problem(Matrix(3, 4, 0.5), {0.5, 0.5, 0.5}, {1, 1, 1, 1},
                        WpmParams(0.75, 3.0));
  try {
    EnumerateCandidates(problem, ClassifyRows(problem), {.limit = 63});
    FAIL() << "expected BudgetError";
  } catch (const BudgetError& err) {
    EXPECT_EQ(err.required(), 64u);
    EXPECT_EQ(err.limit(), 63u);
  }
  EXPECT_EQ(EnumerateCandidates(problem, ClassifyRows(problem), {.limit = 64})
                .total,
            64u);
}

TEST(EnumerateCandidatesTest, DeduplicatesIdenticalPoints) {
  // Every entry equals b: all 3^2 choice vectors are active, and the points
  // only depend on the set of chosen columns.
  const Problem problem(Matrix(2, 3, 0.5), {0.5, 0.5}, {1, 1, 1},
                        WpmParams(0.75, 3.0));
  const CandidateSet set = EnumerateCandidates(problem, ClassifyRows(problem));
  EXPECT_EQ(set.all.size(), 9u);
  EXPECT_EQ(set.feasible.size(), 6u);  // 3 singletons + 3 pairs
}

TEST(EnumerateCandidatesTest, ThreadCountDoesNotChangeResult) {
  const Problem problem(Matrix(4, 5, 0.5), {0.5, 0.5, 0.5, 0.5},
                        std::vector<double>(5, 1.0), WpmParams(0.6, 2.0));
  const auto rows = ClassifyRows(problem);
  const CandidateSet serial = EnumerateCandidates(problem, rows);
  for (unsigned threads : {2u, 3u, 7u, 64u}) {
    const CandidateSet parallel =
        EnumerateCandidates(problem, rows, {.threads = threads});
    ASSERT_EQ(parallel.all.size(), serial.all.size());
    for (std::size_t k = 0; k < serial.all.size(); ++k) {
      EXPECT_EQ(parallel.all[k].e, serial.all[k].e);
      EXPECT_EQ(parallel.all[k].point, serial.all[k].point);
    }
    EXPECT_EQ(parallel.feasible, serial.feasible);
  }
}

// Randomized structure checks on forward-constructed instances.
class LatticePropertyTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(LatticePropertyTest, StructureOfSolutionSet) {
  const std::uint64_t seed = GetParam();
  const GeneratedInstance inst =
      testing::RandomInstance(seed, WpmParams(0.75, 3.0));
  const Problem& problem = inst.problem;
  const auto rows = ClassifyRows(problem);
  ASSERT_TRUE(AllRowsFeasible(rows));
  const CandidateSet set = EnumerateCandidates(problem, rows);
  ASSERT_FALSE(set.feasible.empty());

  EXPECT_LE(testing::MaxResidual(problem, set.x_max), kFeasibilityTol);
  EXPECT_TRUE(testing::AllLeq(inst.hidden_solution, set.x_max, 1e-12));
  EXPECT_EQ(testing::CountMaximalityFailures(problem, set.x_max), 0);

  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> points;
  for (const auto& cand : set.FeasibleCandidates()) {
    EXPECT_LE(testing::MaxResidual(problem, cand.point), kFeasibilityTol);
    points.push_back(cand.point);
    for (int k = 0; k < 100; ++k) {
      std::vector<double> y(problem.n());
      for (std::size_t j = 0; j < y.size(); ++j) {
        const double lo = std::min(cand.point[j], set.x_max[j]);
        const double hi = std::max(cand.point[j], set.x_max[j]);
        y[j] = std::uniform_real_distribution<double>(lo, hi)(rng);
      }
      EXPECT_LE(testing::MaxResidual(problem, y), kFeasibilityTol);
    }
  }
  for (const auto& x : testing::MinimalPoints(points)) {
    EXPECT_EQ(testing::CountMinimalityFailures(problem, x), 0);
  }
}

// Grid points within residual r of every equality lie in the union of the
// cells rebuilt with b -/+ r, i.e. under Xmax(b + r) and above Xmin(e; b - r)
// for some admissible e.
TEST_P(LatticePropertyTest, GridSampleCoveredByInflatedCells) {
  const GeneratedInstance inst =
      testing::RandomInstance(GetParam(), WpmParams(0.75, 3.0));
  const Problem& problem = inst.problem;
  const WpmParams& params = problem.params();
  const double p = params.p();
  const double w = params.w();
  const auto grid = oracle::GridFeasibleSet(problem, {.points_per_axis = 26});
  auto solve_for = [&](double a, double b) {
    const double base = (std::pow(std::clamp(b, 0.0, 1.0), p) -
                         w * std::pow(a, p)) / (1.0 - w);
    return std::clamp(std::pow(std::max(base, 0.0), 1.0 / p), 0.0, 1.0);
  };
  for (const auto& y : grid) {
    const oracle::MembershipResult mem =
        oracle::CheckMembership(problem, y, 1e-3);
    for (std::size_t i = 0; i < problem.m(); ++i) {
      const double r = mem.residuals[i] + 1e-15;
      const double b = problem.b()[i];
      bool reached = false;
      for (std::size_t j = 0; j < problem.n(); ++j) {
        const double a = problem.a()(i, j);
        if (Phi(a, 1.0, params) > b + r) {
          EXPECT_LE(y[j], solve_for(a, b + r) + 1e-12);
        }
        if (Phi(a, y[j], params) >= b - r &&
            y[j] >= solve_for(a, b - r) - 1e-12) {
          reached = true;
        }
      }
      EXPECT_TRUE(reached) << "row " << i + 1;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, LatticePropertyTest,
                         ::testing::Range<std::uint64_t>(0, 60));

}  // namespace
}  // namespace wpmfre
