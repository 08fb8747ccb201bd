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

// Weighted power mean
//
//   phi(a, x) = (w a^p + (1 - w) x^p)^(1/p),   0 < w < 1,  0 < p < inf,
//
// and its inverse in the second argument. phi is idempotent, internal
// (min(a,x) <= phi(a,x) <= max(a,x)) and strictly increasing in x.

#ifndef WPMFRE_WPM_OPERATOR_HPP_
#define WPMFRE_WPM_OPERATOR_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <string>

#include "wpmfre/common.hpp"

namespace wpmfre {

class WpmParams {
 public:
  WpmParams(double w, double p) : w_(w), p_(p) {
    if (!(w > 0.0 && w < 1.0)) {
      throw ParameterError("weight w must lie in (0,1), got " + Format(w));
    }
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw ParameterError("exponent p must be positive and finite, got " +
                           Format(p));
    }
    inv_p_ = 1.0 / p_;
    w_root_ = std::pow(w_, inv_p_);
  }

  double w() const noexcept { return w_; }
  double p() const noexcept { return p_; }
  double inv_p() const noexcept { return inv_p_; }
  // w^(1/p); phi(a, 0) = w_root * a.
  double w_root() const noexcept { return w_root_; }

  bool operator==(const WpmParams& other) const noexcept {
    return w_ == other.w_ && p_ == other.p_;
  }

 private:
  static std::string Format(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  }

  double w_;
  double p_;
  double inv_p_;
  double w_root_;
};

namespace internal {

inline void CheckUnit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in [0,1], got " << v;
    throw DomainError(os.str());
  }
}

}  // namespace internal

inline double Phi(double a, double x, const WpmParams& params) {
  internal::CheckUnit(a, "a");
  internal::CheckUnit(x, "x");
  const double p = params.p();
  const double w = params.w();
  return std::pow(w * std::pow(a, p) + (1.0 - w) * std::pow(x, p),
                  params.inv_p());
}

// Upper bound on a for phi(a, .) = b to be solvable: b / w^(1/p).
inline double UpperEntryThreshold(double b, const WpmParams& params) {
  return b / params.w_root();
}

// Returns true and sets `threshold` to ((b^p + w - 1)/w)^(1/p) when
// b^p >= 1 - w; returns false otherwise (every a reaches b at some x).
inline bool LowerEntryThreshold(double b, const WpmParams& params,
                                double& threshold) {
  const double w = params.w();
  const double bp = std::pow(b, params.p());
  if (bp < 1.0 - w) return false;
  threshold = std::pow(std::max(0.0, (bp + w - 1.0) / w), params.inv_p());
  return true;
}

// The unique x in [0,1] with phi(a, x) = b. Throws NoSolutionError when
// none exists; boundary cases within kClassifyTol are accepted and the
// result clamped into [0,1].
inline double PhiInverseX(double a, double b, const WpmParams& params) {
  internal::CheckUnit(a, "a");
  internal::CheckUnit(b, "b");
  if (a > UpperEntryThreshold(b, params) + kClassifyTol) {
    throw NoSolutionError("phi(a, x) > b for every x: entry too large");
  }
  double lower = 0.0;
  if (LowerEntryThreshold(b, params, lower) && a < lower - kClassifyTol) {
    throw NoSolutionError("phi(a, x) < b for every x: entry too small");
  }
  const double p = params.p();
  const double w = params.w();
  const double base =
      (std::pow(b, p) - w * std::pow(a, p)) / (1.0 - w);
  return std::clamp(std::pow(std::max(0.0, base), params.inv_p()), 0.0, 1.0);
}

// max_j phi(a_row[j], x[j]).
inline double RowComposition(std::span<const double> a_row,
                             std::span<const double> x,
                             const WpmParams& params) {
  if (a_row.size() != x.size()) {
    throw DimensionError("row has " + std::to_string(a_row.size()) +
                         " entries but x has " + std::to_string(x.size()));
  }
  if (a_row.empty()) throw DimensionError("empty row");
  double best = 0.0;
  for (std::size_t j = 0; j < a_row.size(); ++j) {
    best = std::max(best, Phi(a_row[j], x[j], params));
  }
  return best;
}

}  // namespace wpmfre

#endif  // WPMFRE_WPM_OPERATOR_HPP_
