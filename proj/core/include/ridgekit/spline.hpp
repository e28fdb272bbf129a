// Copyright 2026 The ridgekit Authors.
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

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ridgekit {

/// Uniform mesh t_1 < ... < t_{2N+3} on [-1-1/N, 1+1/N], t_i = -1 + (i-2)/N.
/// Node indices are 1-based to match the usual labelling; t_2 = -1 and
/// t_{2N+2} = 1.
class SplineGrid {
 public:
  explicit SplineGrid(int N);

  int N() const { return N_; }
  int size() const { return 2 * N_ + 3; }
  double node(int i) const;
  std::span<const double> nodes() const { return nodes_; }

 private:
  int N_;
  std::vector<double> nodes_;
};

/// Hat function centred at t_i, i in 2..2N+2: zero outside (t_{i-1}, t_{i+1}),
/// one at t_i, linear in between. Equals
/// N(relu(u - t_{i-1}) - 2 relu(u - t_i) + relu(u - t_{i+1})).
double hat(const SplineGrid& grid, int i, double u);

/// Quasi-interpolant sum_{i=2}^{2N+2} g(t_i) hat_i(u). g_values holds g at
/// t_2 .. t_{2N+2} (2N+1 values); u must lie in [-1, 1].
double apply_Lt(const SplineGrid& grid, std::span<const double> g_values, double u);

/// Second-difference map R^{2N+1} -> R^{2N+3}. zeta[k] holds the value at
/// node t_{k+2}. The result e satisfies
///   apply_Lt(g)(u) = N * sum_i e_i relu(u - t_i).
std::vector<double> apply_LN(std::span<const double> zeta);

/// g(t_2), ..., g(t_{2N+2}).
std::vector<double> sample_interior_nodes(const SplineGrid& grid,
                                          const std::function<double(double)>& g);

/// Evaluates N * sum_i coeffs_i relu(u - t_i) for coefficients over all 2N+3
/// nodes.
double relu_expansion(const SplineGrid& grid, std::span<const double> coeffs, double u);

}  // namespace ridgekit
