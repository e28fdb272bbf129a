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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ridgekit/polyfactor.hpp"

namespace ridgekit {

/// One convolutional layer: filter supported on {0..S} and a bias of length
/// d_{j-1} + S whose middle entries (0-based S .. d_j-S-1) are all equal.
struct ConvLayer {
  FilterSequence filter;
  std::vector<double> bias;
};

/// J Toeplitz layers of width d_j = d + jS, then a fully connected ReLU layer
/// of width m(2N+3) whose 0/1 matrix is implicit: block k (rows
/// k(2N+3) .. k(2N+3)+2N+2) reads component (k+1)d - 1 of h^(J). The output
/// is c . h^(J+1); M is the clipping level used by estimators.
struct ConvNetModel {
  int d = 0;
  int S = 0;
  int m = 0;
  int N = 0;
  double M = 1.0;
  std::vector<ConvLayer> layers;
  std::vector<double> fc_bias;
  std::vector<double> c;

  int depth() const { return static_cast<int>(layers.size()); }
  /// d_j = d + jS.
  int width(int j) const { return d + j * S; }
  int fc_width() const { return m * (2 * N + 3); }
  /// 0-based index in h^(J) read by fully connected block k.
  int fc_source(int k) const { return (k + 1) * d - 1; }

  /// Throws std::invalid_argument naming the first inconsistent layer.
  void check_shapes() const;
};

/// T^w x for x of length D: out_i = sum_k w_{i-k} x_k, length D + S.
std::vector<double> toeplitz_apply(const FilterSequence& filter, std::span<const double> input,
                                   int S);

/// Activations h^(1) .. h^(J+1) and the prediction c . h^(J+1).
struct ForwardTrace {
  std::vector<std::vector<double>> activations;
  double prediction = 0.0;
};

/// Inputs must lie in the closed unit ball (tolerance 1e-9).
double forward(const ConvNetModel& model, std::span<const double> x);
ForwardTrace forward_trace(const ConvNetModel& model, std::span<const double> x);

/// Same as forward() but without the unit-ball check; used on perturbed or
/// probe inputs that are already known to be valid.
double forward_unchecked(const ConvNetModel& model, std::span<const double> x);

struct MembershipCheck {
  std::string name;
  int layer = 0;          // 1-based layer, J+1 for the fully connected layer, 0 if global
  double measured = 0.0;  // norm or deviation
  double limit = 0.0;     // may be +inf when the bound overflows
  double log_limit = 0.0; // natural log of limit, always finite
  bool passed = false;
  bool overflow = false;

  double slack() const { return limit - measured; }
};

struct MembershipReport {
  std::vector<MembershipCheck> checks;
  bool passed() const;
  /// Checks that failed, by name.
  std::vector<std::string> failures() const;
};

/// Checks the hypothesis-space constraints: ||w^(j)||_inf <= B,
/// ||b^(j)||_inf <= 2((S+1)B)^j for j = 1..J+1, ||c||_inf <= NB, equal middle
/// bias entries, and the block layout of the fully connected layer.
MembershipReport validate_membership(const ConvNetModel& model, double B);

/// 150 m^3 d^2 N^2 ((S+1)B)^{md}: perturbing every parameter of a member by at
/// most delta moves the output by at most this times delta in sup norm.
/// Throws NumericalError if the value overflows a double.
double perturbation_drift_constant(int m, int d, int S, int N, double B);
double log_perturbation_drift_constant(int m, int d, int S, int N, double B);

/// Counts free scalars: (S+1) per filter, 2S+1 per restricted bias, and per
/// block 2N+1 coefficients in the image of the difference map plus one shift.
int free_parameter_count(const ConvNetModel& model);

}  // namespace ridgekit
