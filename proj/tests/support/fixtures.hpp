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

#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ridgekit/ridge.hpp"

namespace fixtures {

/// A random univariate component with correct (alpha, L, G) metadata.
inline ridgekit::RidgeComponent random_component(oracle::Gen& gen, int d) {
  ridgekit::RidgeComponent c;
  c.xi = gen.unit_vector(d);
  const double scale = gen.uniform(0.4, 1.0);
  for (auto& v : c.xi) v *= scale;
  switch (gen.integer(0, 3)) {
    case 0: {
      const double a = gen.uniform(-1.5, 1.5);
      const double s = gen.uniform(-0.5, 0.5);
      c.g = ridgekit::Univariate::abs(a, s);
      c.alpha = 1.0;
      c.L = std::abs(a);
      c.G = std::abs(a) * (1.0 + std::abs(s));
      break;
    }
    case 1: {
      const double A = gen.uniform(-1.0, 1.0);
      const double f = gen.uniform(0.5, 4.0);
      c.g = ridgekit::Univariate::sine(A, f, gen.uniform(-1.0, 1.0));
      c.alpha = 1.0;
      c.L = std::abs(A * f);
      c.G = std::abs(A);
      break;
    }
    case 2: {
      const double c0 = gen.uniform(-1.0, 1.0), c1 = gen.uniform(-1.0, 1.0), c2 = gen.uniform(-1.0, 1.0);
      c.g = ridgekit::Univariate::poly({c0, c1, c2});
      c.alpha = 1.0;
      c.L = std::abs(c1) + 2.0 * std::abs(c2);
      c.G = std::abs(c0) + std::abs(c1) + std::abs(c2);
      break;
    }
    default: {
      const double a = gen.uniform(0.2, 1.0);
      const double s = gen.uniform(-0.5, 0.5);
      const double e = gen.uniform(0.3, 1.0);
      c.g = ridgekit::Univariate::power(a, s, e);
      c.alpha = e;
      c.L = a;
      c.G = a * std::pow(1.0 + std::abs(s), e);
      break;
    }
  }
  // Keep L and G strictly positive for degenerate draws.
  c.L = std::max(c.L, 1e-3);
  c.G = std::max(c.G, 1e-3);
  return c;
}

inline ridgekit::RidgeSpec random_spec(oracle::Gen& gen, int d, int m) {
  ridgekit::RidgeSpec spec;
  spec.d = d;
  for (int j = 0; j < m; ++j) spec.components.push_back(random_component(gen, d));
  return spec;
}

/// f(x) = scale * |<xi, x> - shift| with xi normalized.
inline ridgekit::RidgeSpec single_ridge(std::vector<double> xi, ridgekit::Univariate g, double alpha,
                                        double L, double G) {
  ridgekit::RidgeSpec spec;
  spec.d = static_cast<int>(xi.size());
  ridgekit::RidgeComponent c;
  c.xi = std::move(xi);
  c.g = std::move(g);
  c.alpha = alpha;
  c.L = L;
  c.G = G;
  spec.components.push_back(std::move(c));
  return spec;
}

/// Quasi-interpolant sum_i g(t_i) max(0, 1 - N|u - t_i|) over t_2..t_{2N+2},
/// with t_i = (i - 2 - N)/N, written directly from the hat definition.
inline double hat_interpolant(const std::function<double(double)>& g, int N, double u) {
  double s = 0.0;
  for (int i = 2; i <= 2 * N + 2; ++i) {
    const double t = static_cast<double>(i - 2 - N) / N;
    s += g(t) * std::max(0.0, 1.0 - N * std::abs(u - t));
  }
  return s;
}

}  // namespace fixtures
