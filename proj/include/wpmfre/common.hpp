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

#ifndef WPMFRE_COMMON_HPP_
#define WPMFRE_COMMON_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wpmfre {

// Band used for every strict inequality of the row classification and for
// the componentwise X(e) <= Xmax comparison.
inline constexpr double kClassifyTol = 1e-9;

// Maximum |composition - b_i| accepted when reconstructing an equality.
inline constexpr double kFeasibilityTol = 1e-6;

// Default cap on the number of choice vectors expanded.
inline constexpr std::uint64_t kDefaultEnumerationLimit = 1'000'000;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid operator parameters (w outside (0,1), p not in (0,inf)).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Value outside its admissible range, e.g. a matrix entry above 1.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// phi(a, x) = b has no solution x in [0,1].
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The post-construction membership check of an optimum failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// The expansion of a Cartesian product would exceed its budget. `required`
// saturates at UINT64_MAX.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t required,
              std::uint64_t limit)
      : Error(what), required_(required), limit_(limit) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t limit() const noexcept { return limit_; }
  bool saturated() const noexcept {
    return required_ == std::numeric_limits<std::uint64_t>::max();
  }

 private:
  std::uint64_t required_;
  std::uint64_t limit_;
};

// Multiplication that sticks at UINT64_MAX instead of wrapping.
inline std::uint64_t SaturatingMultiply(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix FromRows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix out(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != out.cols_) {
        throw DimensionError("row " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) +
                             " entries, expected " +
                             std::to_string(out.cols_));
      }
      for (std::size_t j = 0; j < out.cols_; ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }

  std::vector<std::vector<double>> ToRows() const {
    std::vector<std::vector<double>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      out[i].assign(row(i).begin(), row(i).end());
    }
    return out;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace wpmfre

#endif  // WPMFRE_COMMON_HPP_
