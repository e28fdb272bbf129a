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

#include <cstdint>
#include <span>
#include <vector>

#include "ridgekit/convnet.hpp"
#include "ridgekit/polyfactor.hpp"
#include "ridgekit/ridge.hpp"
#include "ridgekit/spline.hpp"

namespace ridgekit {

/// Number of convolutional layers, ceil((md-1)/(S-1)).
int conv_depth(int m, int d, int S);

/// Interleaves the directions into one filter: W_{(j-1)d + (d-i)} = (xi_j)_i
/// (1-based j, i), so row jd of its Toeplitz matrix computes <xi_j, x>.
/// Trailing zeros are trimmed.
FilterSequence interleave_filter(std::span<const std::vector<double>> directions, int d);

/// Biases that keep every ReLU in the convolutional stack active on
/// ||x||_inf <= 1: b^(1) = -||w^(1)||_1 1 and
/// b^(j) = (prod_{p<j} ||w^(p)||_1) T^(j) 1 - (prod_{p<=j} ||w^(p)||_1) 1.
std::vector<std::vector<double>> build_biases(std::span<const FilterSequence> filters, int d,
                                              int S);

/// The convolutional part shared by every network over a fixed set of
/// directions. After it, component jd of h^(J) equals <xi_j, x> + offset,
/// where offset = prod_p ||w^(p)||_1.
struct ConvStack {
  std::vector<ConvLayer> layers;
  double offset = 0.0;
  int factor_count = 0;  // filters before delta padding
};

ConvStack build_conv_stack(std::span<const std::vector<double>> directions, int d, int S);

/// Wraps a stack into a model with fc bias offset + t_i per block and zero
/// output coefficients.
ConvNetModel assemble_model(const ConvStack& stack, int d, int S, int m, int N, double M);

/// N * L_N(g(t_2), ..., g(t_{2N+2})): output weights reproducing the
/// quasi-interpolant of g from the ReLU features relu(u - t_i).
std::vector<double> coefficient_block(const Univariate& g, const SplineGrid& grid);

struct BuiltNetwork {
  ConvNetModel model;
  double offset = 0.0;          // prod_p ||w^(p)||_1
  int factor_count = 0;
  long long parameter_bound = 0; // (3S+2)J + m(2N+2)
  double certified_bound = 0.0;  // sum_j L_j N^{-alpha_j}
};

/// Builds the network whose output is sum_j L_t(g_j)(<xi_j, x>).
/// Requires 2 <= S <= d, d >= 3, N >= 1 and a valid spec; table components
/// must be tabulated at this N.
BuiltNetwork build_network_report(const RidgeSpec& spec, int S, int N, double M);
ConvNetModel build_network(const RidgeSpec& spec, int S, int N, double M);

/// sum_j L_j N^{-alpha_j}.
double certified_bound(const RidgeSpec& spec, int N);

/// Probe set for sup_error: half the points lie on the segments
/// {s xi_j / ||xi_j|| : s in [-1, 1]}, the rest are Halton points mapped into
/// the unit ball. Deterministic given the seed.
std::vector<std::vector<double>> probe_points(const RidgeSpec& spec, int n_probe,
                                              std::uint64_t seed);

/// max over probe_points of |forward(model, x) - f(x)|.
double sup_error(const ConvNetModel& model, const RidgeSpec& spec, int n_probe,
                 std::uint64_t seed);

}  // namespace ridgekit
