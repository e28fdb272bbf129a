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

#include "ridgekit/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ridgekit/random.hpp"

namespace ridgekit {

Univariate Univariate::abs(double scale, double shift) {
  Univariate g;
  g.kind_ = Kind::Abs;
  g.params_ = {scale, shift};
  return g;
}

Univariate Univariate::sine(double amp, double freq, double phase) {
  Univariate g;
  g.kind_ = Kind::Sin;
  g.params_ = {amp, freq, phase};
  return g;
}

Univariate Univariate::poly(std::vector<double> coeffs) {
  Univariate g;
  g.kind_ = Kind::Poly;
  g.params_ = std::move(coeffs);
  return g;
}

Univariate Univariate::power(double scale, double shift, double exponent) {
  if (!(exponent > 0.0)) throw std::invalid_argument("Univariate::power: exponent must be positive");
  Univariate g;
  g.kind_ = Kind::Power;
  g.params_ = {scale, shift, exponent};
  return g;
}

Univariate Univariate::table(std::vector<double> node_values) {
  if (node_values.size() < 3 || node_values.size() % 2 == 0) {
    throw std::invalid_argument("Univariate::table: expected 2N+1 node values with N >= 1");
  }
  Univariate g;
  g.kind_ = Kind::Table;
  g.params_ = std::move(node_values);
  return g;
}

Univariate Univariate::custom(std::function<double(double)> fn, std::string label) {
  Univariate g;
  g.kind_ = Kind::Custom;
  g.fn_ = std::move(fn);
  g.label_ = std::move(label);
  return g;
}

std::optional<int> Univariate::table_resolution() const {
  if (kind_ != Kind::Table) return std::nullopt;
  return static_cast<int>(params_.size() - 1) / 2;
}

std::string Univariate::kind_name() const {
  switch (kind_) {
    case Kind::Abs: return "abs";
    case Kind::Sin: return "sin";
    case Kind::Poly: return "poly";
    case Kind::Power: return "power";
    case Kind::Table: return "table";
    case Kind::Custom: return "custom";
  }
  return "unknown";
}

double Univariate::operator()(double u) const {
  switch (kind_) {
    case Kind::Abs:
      return params_[0] * std::abs(u - params_[1]);
    case Kind::Sin:
      return params_[0] * std::sin(params_[1] * u + params_[2]);
    case Kind::Poly: {
      double acc = 0.0;
      for (auto it = params_.rbegin(); it != params_.rend(); ++it) acc = acc * u + *it;
      return acc;
    }
    case Kind::Power:
      return params_[0] * std::pow(std::abs(u - params_[1]), params_[2]);
    case Kind::Table: {
      const int N = static_cast<int>(params_.size() - 1) / 2;
      const double pos = std::clamp((u + 1.0) * N, 0.0, 2.0 * N);
      const int k = std::min(static_cast<int>(std::floor(pos)), 2 * N - 1);
      const double frac = pos - k;
      return (1.0 - frac) * params_[static_cast<std::size_t>(k)] +
             frac * params_[static_cast<std::size_t>(k + 1)];
    }
    case Kind::Custom:
      return fn_(u);
  }
  return 0.0;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double RidgeSpec::operator()(std::span<const double> x) const {
  double f = 0.0;
  for (const auto& comp : components) f += comp.g(dot(comp.xi, x));
  return f;
}

double RidgeSpec::sup_bound() const {
  double s = 0.0;
  for (const auto& comp : components) s += comp.G;
  return s;
}

std::vector<std::string> check_ridge_spec(const RidgeSpec& spec, std::uint64_t seed) {
  std::vector<std::string> problems;
  auto report = [&](int j, const std::string& what) {
    std::ostringstream msg;
    msg << "component " << j << ": " << what;
    problems.push_back(msg.str());
  };
  if (spec.d < 1) problems.emplace_back("dimension d must be positive");
  if (spec.components.empty()) problems.emplace_back("spec has no components");

  Rng rng(seed);
  for (int j = 0; j < spec.m(); ++j) {
    const auto& comp = spec.components[static_cast<std::size_t>(j)];
    if (static_cast<int>(comp.xi.size()) != spec.d) {
      report(j + 1, "xi has wrong dimension");
      continue;
    }
    const double nrm = norm2(comp.xi);
    if (!(nrm > 0.0)) report(j + 1, "xi is identically zero");
    if (!(nrm <= 1.0 + 1e-12)) report(j + 1, "xi has norm greater than 1");
    if (!(comp.alpha > 0.0 && comp.alpha <= 1.0)) report(j + 1, "alpha must lie in (0, 1]");
    if (!(comp.L >= 0.0) || !(comp.G >= 0.0)) report(j + 1, "L and G must be nonnegative");

    double sup = 0.0;
    for (int k = 0; k <= 2000; ++k) sup = std::max(sup, std::abs(comp.g(-1.0 + k / 1000.0)));
    if (!(sup <= comp.G * (1.0 + 1e-12) + 1e-12)) report(j + 1, "|g| exceeds the declared G");

    if (comp.alpha > 0.0 && comp.alpha <= 1.0) {
      double worst = 0.0;
      for (int k = 0; k < 1000; ++k) {
        const double u = rng.uniform(-1.0, 1.0);
        const double v = rng.uniform(-1.0, 1.0);
        if (u == v) continue;
        worst = std::max(worst, std::abs(comp.g(u) - comp.g(v)) /
                                    std::pow(std::abs(u - v), comp.alpha));
      }
      if (!(worst <= comp.L * (1.0 + 1e-9) + 1e-12)) {
        report(j + 1, "Lipschitz-alpha spot check exceeds the declared L");
      }
    }
  }
  return problems;
}

void validate_ridge_spec(const RidgeSpec& spec) {
  const auto problems = check_ridge_spec(spec);
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "invalid ridge spec:";
  for (const auto& p : problems) msg << "\n  " << p;
  throw std::invalid_argument(msg.str());
}

}  // namespace ridgekit
