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

#include "ridgekit/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ridgekit/random.hpp"

namespace ridgekit {

int conv_depth(int m, int d, int S) {
  if (S < 2) throw std::invalid_argument("conv_depth: S must be >= 2");
  const int M = m * d - 1;
  return (M + S - 2) / (S - 1);
}

FilterSequence interleave_filter(std::span<const std::vector<double>> directions, int d) {
  const std::size_t m = directions.size();
  std::vector<double> w(m * static_cast<std::size_t>(d), 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& xi = directions[j];
    if (static_cast<int>(xi.size()) != d) {
      throw std::invalid_argument("interleave_filter: direction has wrong dimension");
    }
    if (std::all_of(xi.begin(), xi.end(), [](double v) { return v == 0.0; })) {
      std::ostringstream msg;
      msg << "interleave_filter: direction " << j + 1 << " is identically zero";
      throw std::invalid_argument(msg.str());
    }
    for (int i = 0; i < d; ++i) {
      w[j * static_cast<std::size_t>(d) + static_cast<std::size_t>(d - 1 - i)] =
          xi[static_cast<std::size_t>(i)];
    }
  }
  return FilterSequence(std::move(w));
}

std::vector<std::vector<double>> build_biases(std::span<const FilterSequence> filters, int d,
                                              int S) {
  std::vector<std::vector<double>> biases;
  biases.reserve(filters.size());
  double prev = 1.0;
  int in_width = d;
  for (std::size_t j = 0; j < filters.size(); ++j) {
    const double norm = filters[j].l1_norm();
    const double cur = prev * norm;
    const int out_width = in_width + S;
    std::vector<double> b(static_cast<std::size_t>(out_width));
    if (j == 0) {
      std::fill(b.begin(), b.end(), -norm);
    } else {
      const std::vector<double> ones(static_cast<std::size_t>(in_width), 1.0);
      const auto t_ones = toeplitz_apply(filters[j], ones, S);
      for (std::size_t i = 0; i < b.size(); ++i) b[i] = prev * t_ones[i] - cur;
      // Rows S .. d_j-S-1 see the whole filter; pin them to one value.
      for (int i = S + 1; i <= out_width - S - 1; ++i) {
        b[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(S)];
      }
    }
    biases.push_back(std::move(b));
    prev = cur;
    in_width = out_width;
  }
  return biases;
}

ConvStack build_conv_stack(std::span<const std::vector<double>> directions, int d, int S) {
  if (S < 2) throw std::invalid_argument("build_conv_stack: S must be >= 2");
  const int m = static_cast<int>(directions.size());
  if (m < 1) throw std::invalid_argument("build_conv_stack: need at least one direction");
  const int J = conv_depth(m, d, S);

  const FilterSequence W = interleave_filter(directions, d);
  std::vector<FilterSequence> filters = factorize_filter(W, S);
  ConvStack stack;
  stack.factor_count = static_cast<int>(filters.size());
  if (stack.factor_count > J) {
    throw NumericalError("build_conv_stack: factorization produced more filters than layers");
  }
  while (static_cast<int>(filters.size()) < J) filters.push_back(FilterSequence::delta());

  auto biases = build_biases(filters, d, S);
  double offset = 1.0;
  for (std::size_t j = 0; j < filters.size(); ++j) {
    offset *= filters[j].l1_norm();
    stack.layers.push_back({std::move(filters[j]), std::move(biases[j])});
  }
  if (!std::isfinite(offset)) throw NumericalError("build_conv_stack: bias offset overflows");
  stack.offset = offset;
  return stack;
}

ConvNetModel assemble_model(const ConvStack& stack, int d, int S, int m, int N, double M) {
  ConvNetModel model;
  model.d = d;
  model.S = S;
  model.m = m;
  model.N = N;
  model.M = M;
  model.layers = stack.layers;
  const SplineGrid grid(N);
  const int block = grid.size();
  model.fc_bias.resize(static_cast<std::size_t>(m * block));
  for (int k = 0; k < m; ++k) {
    for (int i = 1; i <= block; ++i) {
      model.fc_bias[static_cast<std::size_t>(k * block + i - 1)] = stack.offset + grid.node(i);
    }
  }
  model.c.assign(model.fc_bias.size(), 0.0);
  return model;
}

std::vector<double> coefficient_block(const Univariate& g, const SplineGrid& grid) {
  std::vector<double> samples;
  if (auto res = g.table_resolution()) {
    if (*res != grid.N()) {
      std::ostringstream msg;
      msg << "table component is tabulated at N = " << *res << " but the network uses N = "
          << grid.N();
      throw std::invalid_argument(msg.str());
    }
    samples = g.params();
  } else {
    samples = sample_interior_nodes(grid, [&](double u) { return g(u); });
  }
  auto block = apply_LN(samples);
  for (auto& v : block) v *= grid.N();
  return block;
}

double certified_bound(const RidgeSpec& spec, int N) {
  double s = 0.0;
  for (const auto& comp : spec.components) s += comp.L * std::pow(static_cast<double>(N), -comp.alpha);
  return s;
}

BuiltNetwork build_network_report(const RidgeSpec& spec, int S, int N, double M) {
  if (spec.d < 3) throw std::invalid_argument("build_network: d must be >= 3");
  if (S < 2 || S > spec.d) throw std::invalid_argument("build_network: need 2 <= S <= d");
  if (N < 1) throw std::invalid_argument("build_network: N must be >= 1");
  if (!(M > 0.0)) throw std::invalid_argument("build_network: M must be positive");
  validate_ridge_spec(spec);

  std::vector<std::vector<double>> directions;
  for (const auto& comp : spec.components) directions.push_back(comp.xi);
  const ConvStack stack = build_conv_stack(directions, spec.d, S);

  BuiltNetwork built;
  built.model = assemble_model(stack, spec.d, S, spec.m(), N, M);
  const SplineGrid grid(N);
  const int block = grid.size();
  for (int k = 0; k < spec.m(); ++k) {
    const auto coeffs = coefficient_block(spec.components[static_cast<std::size_t>(k)].g, grid);
    std::copy(coeffs.begin(), coeffs.end(), built.model.c.begin() + k * block);
  }
  built.offset = stack.offset;
  built.factor_count = stack.factor_count;
  built.parameter_bound = static_cast<long long>(3 * S + 2) * conv_depth(spec.m(), spec.d, S) +
                          static_cast<long long>(spec.m()) * (2 * N + 2);
  built.certified_bound = certified_bound(spec, N);
  return built;
}

ConvNetModel build_network(const RidgeSpec& spec, int S, int N, double M) {
  return build_network_report(spec, S, N, M).model;
}

std::vector<std::vector<double>> probe_points(const RidgeSpec& spec, int n_probe,
                                              std::uint64_t seed) {
  if (n_probe < 1) throw std::invalid_argument("probe_points: n_probe must be >= 1");
  std::vector<std::vector<double>> points;
  points.reserve(static_cast<std::size_t>(n_probe));
  const int d = spec.d;
  const int m = std::max(spec.m(), 1);
  const int n_line = spec.m() > 0 ? n_probe / 2 : 0;

  HaltonSequence line_seq(1, seed);
  for (int k = 0; k < n_line; ++k) {
    const auto& xi = spec.components[static_cast<std::size_t>(k % m)].xi;
    const double nrm = norm2(xi);
    const double s = 2.0 * line_seq.next()[0] - 1.0;
    std::vector<double> x(xi.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = s * xi[i] / nrm;
    points.push_back(std::move(x));
  }

  const int cube_dim = 2 * ((d + 1) / 2) + 1;
  if (cube_dim <= 40) {
    HaltonSequence ball_seq(cube_dim, seed ^ 0x9e3779b97f4a7c15ULL);
    while (static_cast<int>(points.size()) < n_probe) points.push_back(cube_to_ball(ball_seq.next(), d));
  } else {
    Rng rng(seed);
    while (static_cast<int>(points.size()) < n_probe) points.push_back(sample_unit_ball(rng, d));
  }
  return points;
}

double sup_error(const ConvNetModel& model, const RidgeSpec& spec, int n_probe,
                 std::uint64_t seed) {
  double worst = 0.0;
  for (const auto& x : probe_points(spec, n_probe, seed)) {
    worst = std::max(worst, std::abs(forward(model, x) - spec(x)));
  }
  return worst;
}

}  // namespace ridgekit
