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

#include "ridgekit/convnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ridgekit {

void ConvNetModel::check_shapes() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("model: " + what); };
  if (d < 1 || S < 1 || m < 1 || N < 1) fail("d, S, m and N must be positive");
  if (!(M > 0.0)) fail("clipping level M must be positive");
  for (int j = 1; j <= depth(); ++j) {
    const auto& layer = layers[static_cast<std::size_t>(j - 1)];
    if (layer.filter.degree() > S) {
      std::ostringstream msg;
      msg << "layer " << j << ": filter support exceeds {0.." << S << "}";
      fail(msg.str());
    }
    if (static_cast<int>(layer.bias.size()) != width(j)) {
      std::ostringstream msg;
      msg << "layer " << j << ": bias has length " << layer.bias.size() << ", expected "
          << width(j);
      fail(msg.str());
    }
  }
  if (static_cast<int>(fc_bias.size()) != fc_width()) {
    fail("fully connected layer: fc_bias length does not match m(2N+3)");
  }
  if (static_cast<int>(c.size()) != fc_width()) {
    fail("fully connected layer: c length does not match m(2N+3)");
  }
  if (fc_source(m - 1) >= width(depth())) {
    fail("fully connected layer: block m reads past the last convolutional output");
  }
}

std::vector<double> toeplitz_apply(const FilterSequence& filter, std::span<const double> input,
                                   int S) {
  if (filter.degree() > S) throw std::invalid_argument("toeplitz_apply: filter longer than S+1");
  const std::size_t D = input.size();
  std::vector<double> out(D + static_cast<std::size_t>(S), 0.0);
  const auto w = filter.coeffs();
  for (std::size_t k = 0; k < D; ++k) {
    const double xk = input[k];
    for (std::size_t s = 0; s < w.size(); ++s) out[k + s] += w[s] * xk;
  }
  return out;
}

namespace {

void check_ball(std::span<const double> x) {
  double n2 = 0.0;
  for (double v : x) n2 += v * v;
  if (!(n2 <= (1.0 + 1e-9) * (1.0 + 1e-9))) {
    throw std::invalid_argument("forward: input lies outside the unit ball");
  }
}

template <bool Capture>
double run_forward(const ConvNetModel& model, std::span<const double> x, ForwardTrace* trace) {
  if (static_cast<int>(x.size()) != model.d) {
    throw std::invalid_argument("forward: input has wrong dimension");
  }
  std::vector<double> h(x.begin(), x.end());
  for (int j = 1; j <= model.depth(); ++j) {
    const auto& layer = model.layers[static_cast<std::size_t>(j - 1)];
    if (static_cast<int>(layer.bias.size()) != model.width(j)) {
      std::ostringstream msg;
      msg << "forward: layer " << j << " bias length " << layer.bias.size()
          << " does not match width " << model.width(j);
      throw std::invalid_argument(msg.str());
    }
    auto z = toeplitz_apply(layer.filter, h, model.S);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::max(0.0, z[i] - layer.bias[i]);
    h = std::move(z);
    if constexpr (Capture) trace->activations.push_back(h);
  }
  const int block = 2 * model.N + 3;
  if (static_cast<int>(model.fc_bias.size()) != model.fc_width() ||
      static_cast<int>(model.c.size()) != model.fc_width() ||
      model.fc_source(model.m - 1) >= static_cast<int>(h.size())) {
    throw std::invalid_argument("forward: fully connected layer shape mismatch");
  }
  double out = 0.0;
  std::vector<double> top;
  if constexpr (Capture) top.resize(static_cast<std::size_t>(model.fc_width()));
  for (int k = 0; k < model.m; ++k) {
    const double src = h[static_cast<std::size_t>(model.fc_source(k))];
    for (int i = 0; i < block; ++i) {
      const std::size_t idx = static_cast<std::size_t>(k * block + i);
      const double a = std::max(0.0, src - model.fc_bias[idx]);
      out += model.c[idx] * a;
      if constexpr (Capture) top[idx] = a;
    }
  }
  if constexpr (Capture) {
    trace->activations.push_back(std::move(top));
    trace->prediction = out;
  }
  return out;
}

}  // namespace

double forward(const ConvNetModel& model, std::span<const double> x) {
  check_ball(x);
  return run_forward<false>(model, x, nullptr);
}

double forward_unchecked(const ConvNetModel& model, std::span<const double> x) {
  return run_forward<false>(model, x, nullptr);
}

ForwardTrace forward_trace(const ConvNetModel& model, std::span<const double> x) {
  check_ball(x);
  ForwardTrace trace;
  run_forward<true>(model, x, &trace);
  return trace;
}

bool MembershipReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::vector<std::string> MembershipReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

namespace {

double sup_abs(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

MembershipCheck norm_check(std::string name, int layer, double measured, double log_limit) {
  MembershipCheck c;
  c.name = std::move(name);
  c.layer = layer;
  c.measured = measured;
  c.log_limit = log_limit;
  c.limit = std::exp(log_limit);
  c.overflow = !std::isfinite(c.limit);
  c.passed = c.overflow ? (measured == 0.0 || std::log(measured) <= log_limit)
                        : measured <= c.limit;
  return c;
}

}  // namespace

MembershipReport validate_membership(const ConvNetModel& model, double B) {
  if (!(B > 0.0)) throw std::invalid_argument("validate_membership: B must be positive");
  MembershipReport report;

  MembershipCheck shapes;
  shapes.name = "fc_structure";
  try {
    model.check_shapes();
    shapes.passed = true;
  } catch (const std::invalid_argument&) {
    shapes.passed = false;
    shapes.measured = 1.0;
  }
  report.checks.push_back(shapes);
  if (!shapes.passed) return report;

  const double log_base = std::log(static_cast<double>(model.S + 1)) + std::log(B);
  const int J = model.depth();
  for (int j = 1; j <= J; ++j) {
    const auto& layer = model.layers[static_cast<std::size_t>(j - 1)];
    report.checks.push_back(
        norm_check("filter_sup", j, layer.filter.sup_norm(), std::log(B)));
    const double bias_sup = sup_abs(layer.bias);
    report.checks.push_back(
        norm_check("bias_sup", j, bias_sup, std::log(2.0) + j * log_base));

    // Middle entries S .. d_j - S - 1 (0-based) share one value.
    MembershipCheck restrict;
    restrict.name = "bias_restriction";
    restrict.layer = j;
    const int lo = model.S;
    const int hi = model.width(j) - model.S - 1;
    double deviation = 0.0;
    for (int i = lo + 1; i <= hi; ++i) {
      deviation = std::max(deviation, std::abs(layer.bias[static_cast<std::size_t>(i)] -
                                               layer.bias[static_cast<std::size_t>(lo)]));
    }
    restrict.measured = deviation;
    restrict.limit = 1e-12 * std::max(1.0, bias_sup);
    restrict.log_limit = std::log(restrict.limit);
    restrict.passed = deviation <= restrict.limit;
    report.checks.push_back(restrict);
  }
  report.checks.push_back(
      norm_check("bias_sup", J + 1, sup_abs(model.fc_bias), std::log(2.0) + (J + 1) * log_base));
  report.checks.push_back(
      norm_check("coefficient_sup", J + 1, sup_abs(model.c), std::log(model.N * B)));
  return report;
}

double log_perturbation_drift_constant(int m, int d, int S, int N, double B) {
  if (m < 1 || d < 1 || N < 1 || S < 2 || !(B > 0.0)) {
    throw std::invalid_argument("perturbation_drift_constant: m, d, N, B must be positive and S >= 2");
  }
  return std::log(150.0) + 3.0 * std::log(m) + 2.0 * std::log(d) + 2.0 * std::log(N) +
         static_cast<double>(m) * d * (std::log(S + 1.0) + std::log(B));
}

double perturbation_drift_constant(int m, int d, int S, int N, double B) {
  const double log_value = log_perturbation_drift_constant(m, d, S, N, B);
  const double power = std::pow((S + 1.0) * B, static_cast<double>(m) * d);
  const double value = 150.0 * m * m * m * static_cast<double>(d) * d * N * N * power;
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << "perturbation_drift_constant: overflow (log value " << log_value
        << "); use log_perturbation_drift_constant";
    throw NumericalError(msg.str());
  }
  return value;
}

int free_parameter_count(const ConvNetModel& model) {
  return model.depth() * ((model.S + 1) + (2 * model.S + 1)) +
         model.m * ((2 * model.N + 1) + 1);
}

}  // namespace ridgekit
