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

#include "ridgekit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ridgekit/constructor.hpp"
#include "ridgekit/convnet.hpp"
#include "ridgekit/estimator.hpp"

namespace ridgekit {

namespace {

void check_sdm(int S, int d, int m) {
  if (d < 3) throw std::invalid_argument("bounds: d must be >= 3");
  if (S < 2 || S > d) throw std::invalid_argument("bounds: need 2 <= S <= d");
  if (m < 1) throw std::invalid_argument("bounds: m must be >= 1");
}

BoundEntry linear_entry(std::string name, std::string formula, double value) {
  BoundEntry e;
  e.name = std::move(name);
  e.formula_id = std::move(formula);
  e.value = value;
  e.log_value = value > 0.0 ? std::log(value) : std::numeric_limits<double>::quiet_NaN();
  e.overflow = !std::isfinite(value);
  return e;
}

BoundEntry log_entry(std::string name, std::string formula, double log_value) {
  BoundEntry e;
  e.name = std::move(name);
  e.formula_id = std::move(formula);
  e.log_value = log_value;
  e.value = std::exp(log_value);
  e.overflow = !std::isfinite(e.value);
  if (e.overflow) e.value = std::numeric_limits<double>::infinity();
  return e;
}

}  // namespace

long long param_count(int S, int d, int m, int N) {
  check_sdm(S, d, m);
  if (N < 1) throw std::invalid_argument("param_count: N must be >= 1");
  return static_cast<long long>(3 * S + 2) * conv_depth(m, d, S) +
         static_cast<long long>(m) * (2LL * N + 2);
}

double filter_bound_B(std::span<const double> xi_m, int S, double G) {
  const auto it = std::find_if(xi_m.begin(), xi_m.end(), [](double v) { return v != 0.0; });
  if (it == xi_m.end()) throw std::invalid_argument("filter_bound_B: xi_m is identically zero");
  const double first = std::pow(2.0, S) * std::pow(1.0 + 1.0 / std::abs(*it), S);
  return std::max(first, 4.0 * G);
}

double log_bias_bound(int j, int S, double B) {
  return std::log(2.0) + j * std::log((S + 1) * B);
}

double log_output_bound(int j, int S, double B) {
  return std::log(2.0 * j + 1.0) + j * std::log((S + 1) * B);
}

CoveringConstants covering_constants(int S, int d, int m, double B) {
  check_sdm(S, d, m);
  if (!(B > 0.0)) throw std::invalid_argument("covering_constants: B must be positive");
  const double md = static_cast<double>(m) * d;
  CoveringConstants k;
  k.C = 5.0 * (m * md + 2.0 * m) + (md - 1.0) * (md * S + md + S + 1.0);
  k.C_prime = 2.0 * k.C + 5.0 * m;
  k.C_double_prime = 3.0 * md * k.C * std::log(153.0 * md * (S + 1) * B) + k.C_prime;
  return k;
}

double covering_log_bound(double delta, int N, const CoveringConstants& constants) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("covering_log_bound: delta must lie in (0, 1]");
  }
  if (N < 1) throw std::invalid_argument("covering_log_bound: N must be >= 1");
  const double n = N;
  return constants.C * n * std::log(1.0 / delta) + constants.C_double_prime * n * std::log(n);
}

double oracle_failure_prob(const OracleInputs& in) {
  if (!(in.delta > 0.0)) throw std::invalid_argument("oracle_failure_prob: delta must be positive");
  if (!(in.M > 0.0)) throw std::invalid_argument("oracle_failure_prob: M must be positive");
  const double first = in.C1 * in.n1 * std::log(16.0 * in.M / in.delta) +
                       in.C2 * in.n2 * std::log(in.n2) -
                       3.0 * in.n * in.delta / (512.0 * in.M * in.M);
  const double spread = 3.0 * in.M + in.h_inf;
  const double second = -3.0 * in.n * in.delta * in.delta /
                        (16.0 * spread * spread * (6.0 * in.approx_err_sq + in.delta));
  return std::exp(first) + std::exp(second);
}

RatePrediction rate_predictions(double alpha, double n) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("rate_predictions: alpha must lie in (0, 1]");
  }
  if (!(n >= 1.0)) throw std::invalid_argument("rate_predictions: n must be >= 1");
  RatePrediction r;
  r.lower = std::pow(n, -2.0 * alpha / (2.0 * alpha + 1.0));
  r.upper_with_log = r.lower * std::log(n);
  r.N_choice = resolution_for(static_cast<std::size_t>(n), alpha);
  return r;
}

double rate_constant_C3(double C1, double C2, double M, double alpha, double C_am) {
  return C1 * std::log(8.0 * M / (3.0 * C_am * C_am)) + 2.0 * alpha * C1 + C2;
}

double rate_constant_C4(double C3, double M, double C_am) {
  const double spread = 4.0 * M + C_am;
  return std::max({12.0 * C_am * C_am, 2048.0 / 3.0 * M * M * C3, 64.0 / 3.0 * spread * spread});
}

const BoundEntry* BoundReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

BoundReport bound_report(const BoundsQuery& q) {
  check_sdm(q.S, q.d, q.m);
  if (q.N < 1) throw std::invalid_argument("bounds: N must be >= 1");
  BoundReport r;
  const int J = conv_depth(q.m, q.d, q.S);
  r.entries.push_back(linear_entry("J", "ceil((md-1)/(S-1))", J));
  r.entries.push_back(linear_entry("param_count", "(3S+2)J+m(2N+2)",
                                   static_cast<double>(param_count(q.S, q.d, q.m, q.N))));
  r.entries.push_back(linear_entry("fc_width", "m(2N+3)", q.m * (2.0 * q.N + 3.0)));

  const CoveringConstants k = covering_constants(q.S, q.d, q.m, q.B.value_or(1.0));
  r.entries.push_back(linear_entry("C", "5(m^2d+2m)+(md-1)(mdS+md+S+1)", k.C));
  r.entries.push_back(linear_entry("C_prime", "2C+5m", k.C_prime));

  if (q.B) {
    const double B = *q.B;
    if (!(B > 0.0)) throw std::invalid_argument("bounds: B must be positive");
    r.entries.push_back(linear_entry("B", "input", B));
    r.entries.push_back(linear_entry("C_double_prime", "3mdC*log(153md(S+1)B)+C'",
                                     k.C_double_prime));
    r.entries.push_back(log_entry("filter_product_bound", "((S+1)B)^J",
                                  J * std::log((q.S + 1) * B)));
    r.entries.push_back(linear_entry("coefficient_bound", "N*B", q.N * B));
    for (int j = 1; j <= J + 1; ++j) {
      r.entries.push_back(log_entry("bias_bound_" + std::to_string(j), "2((S+1)B)^j",
                                    log_bias_bound(j, q.S, B)));
    }
    for (int j = 1; j <= J + 1; ++j) {
      r.entries.push_back(log_entry("output_bound_" + std::to_string(j), "(2j+1)((S+1)B)^j",
                                    log_output_bound(j, q.S, B)));
    }
    r.entries.push_back(log_entry("drift_constant", "150m^3d^2N^2((S+1)B)^(md)",
                                  log_perturbation_drift_constant(q.m, q.d, q.S, q.N, B)));
    const double n = q.N;
    r.entries.push_back(linear_entry("covering_log_coefficient", "C''*N*log(N)",
                                     k.C_double_prime * n * std::log(n)));
  }

  if (q.alpha && q.n) {
    const RatePrediction p = rate_predictions(*q.alpha, *q.n);
    r.entries.push_back(linear_entry("rate_lower", "n^(-2a/(2a+1))", p.lower));
    r.entries.push_back(linear_entry("rate_upper_with_log", "n^(-2a/(2a+1))*log(n)",
                                     p.upper_with_log));
    r.entries.push_back(linear_entry("N_choice", "ceil(n^(1/(1+2a)))", p.N_choice));
  }
  return r;
}

}  // namespace ridgekit
