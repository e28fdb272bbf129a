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

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ridgekit/bounds.hpp"
#include "ridgekit/constructor.hpp"

using ridgekit::FilterSequence;

namespace {

double target_interpolant(const ridgekit::RidgeSpec& spec, int N, const std::vector<double>& x) {
  double s = 0.0;
  for (const auto& c : spec.components) {
    double u = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) u += c.xi[i] * x[i];
    s += fixtures::hat_interpolant([&](double v) { return c.g(v); }, N, u);
  }
  return s;
}

}  // namespace

TEST(ConvDepth, Formula) {
  EXPECT_EQ(ridgekit::conv_depth(1, 4, 2), 3);
  EXPECT_EQ(ridgekit::conv_depth(1, 3, 3), 1);
  EXPECT_EQ(ridgekit::conv_depth(3, 8, 2), 23);
  EXPECT_EQ(ridgekit::conv_depth(2, 5, 3), 5);
  EXPECT_THROW(ridgekit::conv_depth(1, 3, 1), std::invalid_argument);
}

TEST(Interleave, RowJdComputesInnerProduct) {
  oracle::Gen gen(10);
  for (int t = 0; t < 20; ++t) {
    const int d = gen.integer(3, 6), m = gen.integer(1, 3);
    std::vector<std::vector<double>> dirs;
    for (int j = 0; j < m; ++j) dirs.push_back(gen.unit_vector(d));
    const FilterSequence W = ridgekit::interleave_filter(dirs, d);
    const std::vector<double> w(W.coeffs().begin(), W.coeffs().end());
    const auto x = gen.ball_point(d);
    const int K = m * d - 1;
    const auto y = oracle::matvec(oracle::toeplitz(w, d, K), x);
    for (int j = 0; j < m; ++j) {
      double ip = 0.0;
      for (int i = 0; i < d; ++i) ip += dirs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      EXPECT_NEAR(y[static_cast<std::size_t>((j + 1) * d - 1)], ip, 1e-14);
    }
  }
}

TEST(Interleave, RejectsZeroDirection) {
  std::vector<std::vector<double>> dirs{{0.0, 0.0, 0.0}};
  EXPECT_THROW(ridgekit::interleave_filter(dirs, 3), std::invalid_argument);
}

TEST(ConvStack, ReluStaysActiveAndCarriesInnerProducts) {
  oracle::Gen gen(77);
  for (int t = 0; t < 30; ++t) {
    const int d = gen.integer(3, 7), m = gen.integer(1, 3), S = gen.integer(2, 3);
    std::vector<std::vector<double>> dirs;
    for (int j = 0; j < m; ++j) dirs.push_back(gen.unit_vector(d));
    const auto stack = ridgekit::build_conv_stack(dirs, d, S);
    EXPECT_EQ(static_cast<int>(stack.layers.size()), ridgekit::conv_depth(m, d, S));
    const auto x = gen.ball_point(d);
    // Pre-activations stay nonnegative so the ReLUs are the identity.
    std::vector<double> h = x;
    for (const auto& layer : stack.layers) {
      auto z = ridgekit::toeplitz_apply(layer.filter, h, S);
      for (std::size_t i = 0; i < z.size(); ++i) {
        z[i] -= layer.bias[i];
        EXPECT_GE(z[i], -1e-9 * stack.offset);
        z[i] = std::max(0.0, z[i]);
      }
      h = z;
    }
    for (int j = 0; j < m; ++j) {
      double ip = 0.0;
      for (int i = 0; i < d; ++i) ip += dirs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      EXPECT_NEAR(h[static_cast<std::size_t>((j + 1) * d - 1)] - stack.offset, ip, 1e-9 * stack.offset);
    }
  }
}

TEST(Biases, FirstLayerAndRestriction) {
  oracle::Gen gen(5);
  std::vector<std::vector<double>> dirs{gen.unit_vector(6), gen.unit_vector(6)};
  const auto stack = ridgekit::build_conv_stack(dirs, 6, 2);
  const auto& b1 = stack.layers[0].bias;
  for (double v : b1) EXPECT_DOUBLE_EQ(v, -stack.layers[0].filter.l1_norm());
  for (std::size_t j = 0; j < stack.layers.size(); ++j) {
    const auto& b = stack.layers[j].bias;
    const int S = 2;
    for (std::size_t i = S; i + S < b.size(); ++i) EXPECT_EQ(b[i], b[S]);
  }
}

TEST(CoefficientBlock, ScaledSecondDifferences) {
  const ridgekit::SplineGrid grid(3);
  const auto g = ridgekit::Univariate::poly({0.0, 0.0, 1.0});
  const auto block = ridgekit::coefficient_block(g, grid);
  ASSERT_EQ(static_cast<int>(block.size()), grid.size());
  for (int k = 0; k <= 300; ++k) {
    const double u = -1.0 + 2.0 * k / 300.0;
    EXPECT_NEAR(ridgekit::relu_expansion(grid, block, u) / grid.N(),
                fixtures::hat_interpolant([](double v) { return v * v; }, 3, u), 1e-12);
  }
}

TEST(CoefficientBlock, TableMustMatchResolution) {
  const ridgekit::SplineGrid grid(2);
  EXPECT_THROW(ridgekit::coefficient_block(ridgekit::Univariate::table({0, 1, 0}), grid),
               std::invalid_argument);
  EXPECT_NO_THROW(ridgekit::coefficient_block(ridgekit::Univariate::table({0, 1, 0, 1, 0}), grid));
}

TEST(BuildNetwork, OutputIsQuasiInterpolant) {
  oracle::Gen gen(202);
  for (int t = 0; t < 15; ++t) {
    const int d = gen.integer(3, 6), m = gen.integer(1, 3), S = gen.integer(2, 3), N = gen.integer(1, 10);
    const auto spec = fixtures::random_spec(gen, d, m);
    const auto model = ridgekit::build_network(spec, S, N, 10.0);
    for (int k = 0; k < 20; ++k) {
      const auto x = gen.ball_point(d);
      EXPECT_NEAR(ridgekit::forward(model, x), target_interpolant(spec, N, x), 1e-8);
    }
  }
}

TEST(BuildNetwork, ErrorWithinCertifiedBound) {
  oracle::Gen gen(303);
  for (int t = 0; t < 10; ++t) {
    const int d = gen.integer(3, 6), m = gen.integer(1, 2);
    const auto spec = fixtures::random_spec(gen, d, m);
    for (int N : {2, 8}) {
      const auto built = ridgekit::build_network_report(spec, 2, N, 10.0);
      const double err = ridgekit::sup_error(built.model, spec, 1000, 9);
      EXPECT_LE(err, built.certified_bound + 1e-9);
    }
  }
}

TEST(BuildNetwork, ReportFields) {
  oracle::Gen gen(1);
  const auto spec = fixtures::random_spec(gen, 4, 1);
  const auto built = ridgekit::build_network_report(spec, 2, 5, 3.0);
  EXPECT_EQ(built.parameter_bound, 36);
  EXPECT_EQ(built.parameter_bound, ridgekit::param_count(2, 4, 1, 5));
  EXPECT_LE(built.factor_count, built.model.depth());
  EXPECT_DOUBLE_EQ(built.certified_bound, spec.components[0].L * std::pow(5.0, -spec.components[0].alpha));
  EXPECT_DOUBLE_EQ(built.model.M, 3.0);
}

TEST(BuildNetwork, RejectsInvalidArguments) {
  oracle::Gen gen(2);
  const auto spec3 = fixtures::random_spec(gen, 3, 1);
  EXPECT_THROW(ridgekit::build_network(spec3, 4, 2, 1.0), std::invalid_argument);
  EXPECT_THROW(ridgekit::build_network(spec3, 2, 0, 1.0), std::invalid_argument);
  EXPECT_THROW(ridgekit::build_network(spec3, 2, 2, 0.0), std::invalid_argument);
  ridgekit::RidgeSpec small;
  small.d = 2;
  small.components.push_back({{0.6, 0.8}, ridgekit::Univariate::abs(), 1.0, 1.0, 1.0});
  EXPECT_THROW(ridgekit::build_network(small, 2, 2, 1.0), std::invalid_argument);
  auto bad = spec3;
  bad.components[0].G = 1e-6;
  EXPECT_THROW(ridgekit::build_network(bad, 2, 2, 1.0), std::invalid_argument);
}

TEST(FilterBound, ConstructedFiltersWithinB) {
  oracle::Gen gen(4040);
  for (int t = 0; t < 100; ++t) {
    const int d = gen.integer(3, 6), m = gen.integer(1, 3), S = gen.integer(2, 3);
    const auto spec = fixtures::random_spec(gen, d, m);
    double G = 0.0;
    for (const auto& c : spec.components) G = std::max(G, c.G);
    const double B = ridgekit::filter_bound_B(spec.components.back().xi, S, G);
    const auto model = ridgekit::build_network(spec, S, 4, 10.0);
    for (const auto& layer : model.layers) EXPECT_LE(layer.filter.sup_norm(), B);
    for (double c : model.c) EXPECT_LE(std::abs(c), model.N * B);
  }
}

TEST(ProbePoints, InBallAndDeterministic) {
  oracle::Gen gen(6);
  const auto spec = fixtures::random_spec(gen, 5, 2);
  const auto a = ridgekit::probe_points(spec, 300, 42);
  const auto b = ridgekit::probe_points(spec, 300, 42);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 300u);
  for (const auto& x : a) {
    double n2 = 0.0;
    for (double v : x) n2 += v * v;
    EXPECT_LE(n2, 1.0 + 1e-12);
  }
}
