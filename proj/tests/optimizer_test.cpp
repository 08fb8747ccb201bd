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

#include "wpmfre/optimizer.hpp"

#include <cstddef>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.hpp"
#include "wpmfre/oracle.hpp"

namespace wpmfre {
namespace {

TEST(CostSplitTest, PartsRecombine) {
  const std::vector<double> c = {-7.6582, 0.0, 6.6277, -0.0, 3.5};
  const CostSplit split = CostSplit::From(c);
  for (std::size_t j = 0; j < c.size(); ++j) {
    EXPECT_EQ(split.c_plus[j] + split.c_minus[j], c[j]);
    EXPECT_GE(split.c_plus[j], 0.0);
    EXPECT_LE(split.c_minus[j], 0.0);
  }
}

CandidateMinimal Candidate(std::vector<std::size_t> e,
                           std::vector<double> point) {
  return {ChoiceVector{std::move(e)}, std::move(point), true};
}

TEST(SolveZ2Test, PicksSmallestValueThenSmallestChoice) {
  const std::vector<CandidateMinimal> cands = {
      Candidate({1, 0}, {0.2, 0.5}), Candidate({0, 1}, {0.5, 0.2}),
      Candidate({0, 0}, {0.9, 0.9})};
  EXPECT_EQ(SolveZ2(cands, std::vector<double>{1.0, 0.0}).e.columns,
            (std::vector<std::size_t>{1, 0}));
  // All-zero objective: every candidate ties.
  EXPECT_EQ(SolveZ2(cands, std::vector<double>{0.0, 0.0}).e.columns,
            (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(SolveZ2(std::span(cands).first(1), std::vector<double>{5, 5})
                .e.columns,
            (std::vector<std::size_t>{1, 0}));
}

TEST(SolveZ2Test, EmptyListIsError) {
  EXPECT_THROW(SolveZ2({}, std::vector<double>{1.0}), PreconditionError);
}

TEST(AssembleOptimumTest, SignSelectsBound) {
  const std::vector<double> x_max = {0.9, 0.8, 0.7};
  const std::vector<double> x_min = {0.1, 0.0, 0.7};
  EXPECT_EQ(AssembleOptimum(x_max, x_min, std::vector<double>{-1, 0, 2}),
            (std::vector<double>{0.9, 0.0, 0.7}));
  EXPECT_EQ(AssembleOptimum(x_max, x_min, std::vector<double>{-1, -1, -1}),
            x_max);
  EXPECT_EQ(AssembleOptimum(x_max, x_min, std::vector<double>{1, 0, 1}),
            x_min);
}

TEST(SolveTest, WorkedExample) {
  const SolveReport report = Solve(testing::WorkedExample());
  ASSERT_TRUE(report.feasible);
  EXPECT_EQ(testing::OneBased(report.e_star->columns),
            (std::vector<std::size_t>{2, 1, 6, 3, 4}));
  for (std::size_t j = 0; j < 7; ++j) {
    EXPECT_NEAR((*report.x_star)[j], testing::kExampleXStar[j], 1e-4);
  }
  EXPECT_NEAR(*report.z_star, testing::kExampleZStar, 1e-3);
  EXPECT_EQ(report.candidates_total, 2u);
  EXPECT_EQ(report.candidates_feasible, 2u);
  EXPECT_EQ(report.simplification.choice_space_before, 24u);
  EXPECT_EQ(report.simplification.choice_space_after, 2u);
}

TEST(SolveTest, WorkedExampleWithoutSimplification) {
  const SolveReport with = Solve(testing::WorkedExample());
  const SolveReport without =
      Solve(testing::WorkedExample(), {.simplify = false});
  ASSERT_TRUE(without.feasible);
  EXPECT_EQ(without.candidates_total, 24u);
  EXPECT_NEAR(*without.z_star, *with.z_star, 1e-9);
}

TEST(SolveTest, EntryTooLargeReportsRow) {
  Matrix a = testing::WorkedExample().a();
  a(3, 5) = 1.0;
  const SolveReport report =
      Solve(testing::WorkedExample().WithMatrix(std::move(a)));
  EXPECT_FALSE(report.feasible);
  EXPECT_FALSE(report.x_star.has_value());
  ASSERT_TRUE(report.diagnostic.has_value());
  EXPECT_EQ(report.diagnostic->kind,
            InfeasibilityDiagnostic::Kind::kEntryTooLarge);
  EXPECT_EQ(*report.diagnostic->row, 3u);
  EXPECT_EQ(report.diagnostic->columns, std::vector<std::size_t>{5});
}

TEST(SolveTest, ConflictingRowsReportResiduals) {
  const WpmParams params(0.75, 3.0);
  const Problem problem(Matrix(2, 1, 0.5),
                        {Phi(0.5, 0.3, params), Phi(0.5, 0.6, params)}, {1},
                        params);
  const SolveReport report = Solve(problem);
  EXPECT_FALSE(report.feasible);
  ASSERT_TRUE(report.diagnostic.has_value());
  EXPECT_EQ(report.diagnostic->kind,
            InfeasibilityDiagnostic::Kind::kMaxNotASolution);
  EXPECT_EQ(report.diagnostic->residuals.size(), 2u);
  EXPECT_EQ(*report.diagnostic->row, 1u);
}

TEST(SolveTest, AllNegativeCostsGiveMaximum) {
  const Problem base = testing::WorkedExample();
  const Problem problem(base.a(), base.b(), std::vector<double>(7, -1.0),
                        base.params());
  const SolveReport report = Solve(problem);
  EXPECT_EQ(*report.x_star, *report.x_max);
}

TEST(SolveTest, BudgetErrorCarriesRequiredSize) {
  const Problem problem(Matrix(3, 4, 0.5), {0.5, 0.5, 0.5}, {1, 1, 1, 1},
                        WpmParams(0.75, 3.0));
  try {
    Solve(problem, {.limit = 10});
    FAIL() << "expected BudgetError";
  } catch (const BudgetError& err) {
    EXPECT_EQ(err.required(), 64u);
  }
}

class OptimizerPropertyTest : public ::testing::TestWithParam<std::uint64_t> {
};

TEST_P(OptimizerPropertyTest, OptimalOverCornersAndCells) {
  const std::uint64_t seed = GetParam();
  std::mt19937_64 rng(seed + 1000);
  std::uniform_real_distribution<double> weight(0.05, 0.95);
  std::uniform_real_distribution<double> exponent(0.5, 6.0);
  const WpmParams params(weight(rng), exponent(rng));
  const Problem problem = testing::RandomInstance(seed, params).problem;
  const SolveReport report = Solve(problem);
  ASSERT_TRUE(report.feasible);
  EXPECT_LE(testing::MaxResidual(problem, *report.x_star), kFeasibilityTol);
  EXPECT_NEAR(*report.z_star, Dot(problem.c(), *report.x_star), 1e-12);

  const SolveReport plain = Solve(problem, {.simplify = false});
  EXPECT_NEAR(*plain.z_star, *report.z_star, 1e-9);

  const CandidateSet set = EnumerateCandidates(problem, ClassifyRows(problem));
  for (const auto& cand : set.FeasibleCandidates()) {
    const std::vector<double> corner =
        AssembleOptimum(set.x_max, cand.point, problem.c());
    const double corner_value = Dot(problem.c(), corner);
    EXPECT_LE(*report.z_star, corner_value + 1e-9);
    for (int k = 0; k < 100; ++k) {
      std::vector<double> y(problem.n());
      for (std::size_t j = 0; j < y.size(); ++j) {
        const double lo = std::min(cand.point[j], set.x_max[j]);
        const double hi = std::max(cand.point[j], set.x_max[j]);
        y[j] = std::uniform_real_distribution<double>(lo, hi)(rng);
      }
      EXPECT_LE(corner_value, Dot(problem.c(), y) + 1e-9);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, OptimizerPropertyTest,
                         ::testing::Range<std::uint64_t>(0, 200));

}  // namespace
}  // namespace wpmfre
