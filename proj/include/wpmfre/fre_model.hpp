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

// Problem data for
//
//   min c.x   s.t.   max_j phi(a_ij, x_j) = b_i  (i = 1..m),  x in [0,1]^n
//
// and the per-row column classification that decides whether a single
// equality is solvable.

#ifndef WPMFRE_FRE_MODEL_HPP_
#define WPMFRE_FRE_MODEL_HPP_

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wpmfre/common.hpp"
#include "wpmfre/wpm_operator.hpp"

namespace wpmfre {

class Problem {
 public:
  // Throws DimensionError on shape mismatch and DomainError when an entry of
  // A or b leaves [0,1] or a cost is not finite. Indices in messages are
  // 1-based.
  Problem(Matrix a, std::vector<double> b, std::vector<double> c,
          WpmParams params)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), params_(params) {
    if (a_.rows() == 0 || a_.cols() == 0) {
      throw DimensionError("A must have at least one row and one column");
    }
    if (b_.size() != a_.rows()) {
      throw DimensionError("b has " + std::to_string(b_.size()) +
                           " entries but A has " + std::to_string(a_.rows()) +
                           " rows");
    }
    if (c_.size() != a_.cols()) {
      throw DimensionError("c has " + std::to_string(c_.size()) +
                           " entries but A has " + std::to_string(a_.cols()) +
                           " columns");
    }
    for (std::size_t i = 0; i < a_.rows(); ++i) {
      for (std::size_t j = 0; j < a_.cols(); ++j) {
        const double v = a_(i, j);
        if (!(v >= 0.0 && v <= 1.0)) {
          std::ostringstream os;
          os << "A[" << i + 1 << "][" << j + 1 << "] = " << v
             << " outside [0,1]";
          throw DomainError(os.str());
        }
      }
    }
    for (std::size_t i = 0; i < b_.size(); ++i) {
      if (!(b_[i] >= 0.0 && b_[i] <= 1.0)) {
        std::ostringstream os;
        os << "b[" << i + 1 << "] = " << b_[i] << " outside [0,1]";
        throw DomainError(os.str());
      }
    }
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (!std::isfinite(c_[j])) {
        throw DomainError("c[" + std::to_string(j + 1) + "] is not finite");
      }
    }
  }

  std::size_t m() const noexcept { return a_.rows(); }
  std::size_t n() const noexcept { return a_.cols(); }

  const Matrix& a() const noexcept { return a_; }
  const std::vector<double>& b() const noexcept { return b_; }
  const std::vector<double>& c() const noexcept { return c_; }
  const WpmParams& params() const noexcept { return params_; }

  // Same b, c, params with a replacement matrix.
  Problem WithMatrix(Matrix a) const { return Problem(std::move(a), b_, c_, params_); }

  bool operator==(const Problem&) const = default;

 private:
  Matrix a_;
  std::vector<double> b_;
  std::vector<double> c_;
  WpmParams params_;
};

// Partition of the columns of one row:
//   j_minus     entry so large that phi(a_ij, 0) > b_i already;
//   j_infinity  entry so small that phi(a_ij, 1) < b_i;
//   j_active    the equality phi(a_ij, x_j) = b_i has a unique solution.
// All index lists are 0-based and ascending.
struct RowClassification {
  std::size_t row = 0;
  std::vector<std::size_t> j_minus;
  std::vector<std::size_t> j_infinity;
  std::vector<std::size_t> j_active;

  bool operator==(const RowClassification&) const = default;
};

// Ties with either threshold land in j_active.
inline RowClassification ClassifyRow(const Problem& problem, std::size_t i) {
  if (i >= problem.m()) {
    throw std::out_of_range("row index " + std::to_string(i) +
                            " out of range");
  }
  const WpmParams& params = problem.params();
  const double b = problem.b()[i];
  const double upper = UpperEntryThreshold(b, params);
  double lower = 0.0;
  const bool has_lower = LowerEntryThreshold(b, params, lower);

  RowClassification cls;
  cls.row = i;
  for (std::size_t j = 0; j < problem.n(); ++j) {
    const double a = problem.a()(i, j);
    if (a > upper + kClassifyTol) {
      cls.j_minus.push_back(j);
    } else if (has_lower && a < lower - kClassifyTol) {
      cls.j_infinity.push_back(j);
    } else {
      cls.j_active.push_back(j);
    }
  }
  return cls;
}

inline std::vector<RowClassification> ClassifyRows(const Problem& problem) {
  std::vector<RowClassification> out;
  out.reserve(problem.m());
  for (std::size_t i = 0; i < problem.m(); ++i) {
    out.push_back(ClassifyRow(problem, i));
  }
  return out;
}

// The single equality of the row admits a solution.
inline bool RowFeasible(const RowClassification& cls) {
  return cls.j_minus.empty() && !cls.j_active.empty();
}

inline bool AllRowsFeasible(const std::vector<RowClassification>& classes) {
  for (const auto& cls : classes) {
    if (!RowFeasible(cls)) return false;
  }
  return true;
}

}  // namespace wpmfre

#endif  // WPMFRE_FRE_MODEL_HPP_
