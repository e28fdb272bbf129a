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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ridgekit {

/// A univariate component g on [-1, 1]. The closed-form kinds serialize to
/// the spec file format; Custom wraps an arbitrary callable for in-process
/// use.
class Univariate {
 public:
  enum class Kind { Abs, Sin, Poly, Power, Table, Custom };

  /// scale * |u - shift|
  static Univariate abs(double scale = 1.0, double shift = 0.0);
  /// amp * sin(freq * u + phase)
  static Univariate sine(double amp = 1.0, double freq = 1.0, double phase = 0.0);
  /// sum_k coeffs[k] u^k
  static Univariate poly(std::vector<double> coeffs);
  /// scale * |u - shift|^exponent
  static Univariate power(double scale, double shift, double exponent);
  /// Values at the mesh nodes t_2 .. t_{2N+2} (2N+1 entries). Between nodes
  /// the function is its piecewise-linear interpolant.
  static Univariate table(std::vector<double> node_values);
  static Univariate custom(std::function<double(double)> fn, std::string label = "custom");

  double operator()(double u) const;

  Kind kind() const { return kind_; }
  std::string kind_name() const;
  const std::vector<double>& params() const { return params_; }
  const std::string& label() const { return label_; }

  /// N for a table, empty otherwise.
  std::optional<int> table_resolution() const;

 private:
  Kind kind_ = Kind::Poly;
  std::vector<double> params_;
  std::function<double(double)> fn_;
  std::string label_;
};

/// One additive term g(xi . x) with its declared regularity: g is
/// Lipschitz-alpha with constant L and |g| <= G on [-1, 1].
struct RidgeComponent {
  std::vector<double> xi;
  Univariate g;
  double alpha = 1.0;
  double L = 1.0;
  double G = 1.0;
};

/// f(x) = sum_j g_j(xi_j . x) on the unit ball of R^d.
struct RidgeSpec {
  int d = 0;
  std::vector<RidgeComponent> components;

  int m() const { return static_cast<int>(components.size()); }
  double operator()(std::span<const double> x) const;
  /// sum_j G_j, a bound for |f| on the unit ball.
  double sup_bound() const;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);

/// Problems with a spec: direction norms in (0, 1], alpha in (0, 1],
/// |g| <= G on a grid, and a Lipschitz-alpha spot check on 1000 random pairs.
/// Empty when the spec is valid.
std::vector<std::string> check_ridge_spec(const RidgeSpec& spec, std::uint64_t seed = 7);

/// Throws std::invalid_argument listing every problem found.
void validate_ridge_spec(const RidgeSpec& spec);

}  // namespace ridgekit
