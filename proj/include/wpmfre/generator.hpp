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

#ifndef WPMFRE_GENERATOR_HPP_
#define WPMFRE_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "wpmfre/common.hpp"
#include "wpmfre/fre_model.hpp"
#include "wpmfre/wpm_operator.hpp"

namespace wpmfre {

struct GeneratedInstance {
  Problem problem;
  // The point b was composed from; a member of S(A,b) by construction.
  std::vector<double> hidden_solution;
};

// A ~ U[0,1]^{m x n}, hidden x ~ U[0,1]^n, c ~ U[-10,10]^n and
// b_i = max_j phi(a_ij, x_j). Deterministic for a fixed seed.
inline GeneratedInstance GenerateInstance(std::size_t m, std::size_t n,
                                          const WpmParams& params,
                                          std::uint64_t seed) {
  if (m == 0 || n == 0) {
    throw DimensionError("generated instances need m, n >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> cost(-10.0, 10.0);

  Matrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = unit(rng);
  }
  std::vector<double> hidden(n);
  for (double& v : hidden) v = unit(rng);
  std::vector<double> c(n);
  for (double& v : c) v = cost(rng);
  std::vector<double> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    b[i] = RowComposition(a.row(i), hidden, params);
  }
  return {Problem(std::move(a), std::move(b), std::move(c), params),
          std::move(hidden)};
}

}  // namespace wpmfre

#endif  // WPMFRE_GENERATOR_HPP_
