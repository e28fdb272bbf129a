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

namespace ridgekit {

/// (3S+2) ceil((md-1)/(S-1)) + m(2N+2). Requires 2 <= S <= d, d >= 3.
long long param_count(int S, int d, int m, int N);

/// max{2^S (1 + 1/|(xi_m)_l|)^S, 4G} with (xi_m)_l the first nonzero entry.
double filter_bound_B(std::span<const double> xi_m, int S, double G);

/// Natural logs of 2((S+1)B)^j and (2j+1)((S+1)B)^j.
double log_bias_bound(int j, int S, double B);
double log_output_bound(int j, int S, double B);

struct CoveringConstants {
  double C = 0.0;        // 5(m^2 d + 2m) + (md-1)(mdS + md + S + 1)
  double C_prime = 0.0;  // 2C + 5m
  double C_double_prime = 0.0;  // 3mdC log(153 md (S+1) B) + C'
};

CoveringConstants covering_constants(int S, int d, int m, double B);

/// C N log(1/delta) + C'' N log N, for 0 < delta <= 1.
double covering_log_bound(double delta, int N, const CoveringConstants& constants);

struct OracleInputs {
  double delta = 0.0;
  double n = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
  double h_inf = 0.0;
  double approx_err_sq = 0.0;  // ||h - f_rho||^2
  double M = 1.0;
  double C1 = 0.0;
  double C2 = 0.0;
};

/// exp{C1 n1 log(16M/delta) + C2 n2 log n2 - 3 n delta/(512 M^2)}
///   + exp{-3 n delta^2 / (16 (3M + h_inf)^2 (6 approx_err_sq + delta))},
/// not clamped.
double oracle_failure_prob(const OracleInputs& in);

struct RatePrediction {
  double lower = 0.0;           // n^{-2 alpha/(2 alpha + 1)}
  double upper_with_log = 0.0;  // lower * log n
  int N_choice = 0;             // ceil(n^{1/(1 + 2 alpha)})
};

RatePrediction rate_predictions(double alpha, double n);

/// C3 = C1 log(8M / (3 C_am^2)) + 2 alpha C1 + C2 and
/// C4 = max{12 C_am^2, 2048 M^2 C3 / 3, 64 (4M + C_am)^2 / 3}.
double rate_constant_C3(double C1, double C2, double M, double alpha, double C_am);
double rate_constant_C4(double C3, double M, double C_am);

struct BoundEntry {
  std::string name;
  std::string formula_id;
  double value = 0.0;      // +inf when overflow
  double log_value = 0.0;  // natural log; NaN for nonpositive values
  bool overflow = false;
};

struct BoundReport {
  std::vector<BoundEntry> entries;

  const BoundEntry* find(const std::string& name) const;
};

struct BoundsQuery {
  int S = 2;
  int d = 3;
  int m = 1;
  int N = 1;
  std::optional<double> B;
  std::optional<double> alpha;
  std::optional<double> n;
};

/// Every bound computable from the query. Entries that need B, or alpha and
/// n, are left out when those are missing.
BoundReport bound_report(const BoundsQuery& q);

}  // namespace ridgekit
