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

#include "ridgekit/spline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ridgekit {

SplineGrid::SplineGrid(int N) : N_(N) {
  if (N < 1) throw std::invalid_argument("SplineGrid: N must be >= 1");
  nodes_.resize(static_cast<std::size_t>(2 * N + 3));
  // Integer numerator keeps t_2 = -1, t_{N+2} = 0 and t_{2N+2} = 1 exact.
  for (int i = 1; i <= 2 * N + 3; ++i) {
    nodes_[static_cast<std::size_t>(i - 1)] = static_cast<double>(i - 2 - N) / N;
  }
}

double SplineGrid::node(int i) const {
  if (i < 1 || i > size()) {
    std::ostringstream msg;
    msg << "SplineGrid::node: index " << i << " outside 1.." << size();
    throw std::out_of_range(msg.str());
  }
  return nodes_[static_cast<std::size_t>(i - 1)];
}

double hat(const SplineGrid& grid, int i, double u) {
  if (i < 2 || i > 2 * grid.N() + 2) {
    std::ostringstream msg;
    msg << "hat: index " << i << " outside 2.." << 2 * grid.N() + 2;
    throw std::out_of_range(msg.str());
  }
  return std::max(0.0, 1.0 - grid.N() * std::abs(u - grid.node(i)));
}

double apply_Lt(const SplineGrid& grid, std::span<const double> g_values, double u) {
  const int N = grid.N();
  if (static_cast<int>(g_values.size()) != 2 * N + 1) {
    throw std::invalid_argument("apply_Lt: expected 2N+1 node values");
  }
  if (!(u >= -1.0 && u <= 1.0)) throw std::invalid_argument("apply_Lt: u outside [-1, 1]");
  // Only the two hats around u are nonzero; cell k covers [t_{k+2}, t_{k+3}].
  const double pos = (u + 1.0) * N;
  int k = static_cast<int>(std::floor(pos));
  k = std::clamp(k, 0, 2 * N - 1);
  double acc = 0.0;
  for (int i = k + 2; i <= k + 3; ++i) {
    acc += g_values[static_cast<std::size_t>(i - 2)] * hat(grid, i, u);
  }
  return acc;
}

std::vector<double> apply_LN(std::span<const double> zeta) {
  if (zeta.size() < 3 || zeta.size() % 2 == 0) {
    throw std::invalid_argument("apply_LN: expected 2N+1 values with N >= 1");
  }
  const std::size_t n = zeta.size();  // 2N+1
  // z(i) is the value at node t_i, zero at t_1 and t_{2N+3}.
  auto z = [&](std::size_t i) -> double { return (i < 2 || i > n + 1) ? 0.0 : zeta[i - 2]; };
  std::vector<double> out(n + 2);
  for (std::size_t i = 1; i <= n + 2; ++i) out[i - 1] = z(i - 1) - 2.0 * z(i) + z(i + 1);
  return out;
}

std::vector<double> sample_interior_nodes(const SplineGrid& grid,
                                          const std::function<double(double)>& g) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(2 * grid.N() + 1));
  for (int i = 2; i <= 2 * grid.N() + 2; ++i) v.push_back(g(grid.node(i)));
  return v;
}

double relu_expansion(const SplineGrid& grid, std::span<const double> coeffs, double u) {
  if (static_cast<int>(coeffs.size()) != grid.size()) {
    throw std::invalid_argument("relu_expansion: expected 2N+3 coefficients");
  }
  double acc = 0.0;
  for (int i = 1; i <= grid.size(); ++i) {
    acc += coeffs[static_cast<std::size_t>(i - 1)] * std::max(0.0, u - grid.node(i));
  }
  return grid.N() * acc;
}

}  // namespace ridgekit
