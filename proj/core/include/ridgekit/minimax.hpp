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
#include <span>
#include <string>
#include <vector>

#include "ridgekit/ridge.hpp"

namespace ridgekit {

/// Bump K(u) = kappa (1/2 - |u|)_+^alpha, kappa = min(2^alpha G, L/2).
/// Supported on [-1/2, 1/2], |K| <= G, Lipschitz-alpha constant <= L/2.
double bump_kappa(double alpha, double G, double L);
double bump_K(double u, double alpha, double G, double L);
/// ||K||_2^2 = kappa^2 2^{-2 alpha} / (2 alpha + 1).
double bump_norm_sq(double alpha, double G, double L);

/// Cells A_k = [-1 + 2(k-1)/N_hat, -1 + 2k/N_hat] with centers u_k, and a set
/// of binary codewords indexing sign patterns over the cells.
struct PackingFamily {
  int N_hat = 0;
  double alpha = 1.0;
  double G = 1.0;
  double L = 1.0;
  std::vector<std::string> codewords;
  std::vector<double> centers;
};

PackingFamily make_family(int N_hat, double alpha, double G, double L,
                          std::vector<std::string> codewords = {});

/// Center u_k = -1 + (2k - 1)/N_hat, k = 1..N_hat.
double cell_center(int k, int N_hat);

/// psi_k(x1) = N_hat^{-alpha} K(N_hat (x1 - u_k) / 2), supported on A_k.
double psi(int k, const PackingFamily& family, double x1);

/// phi_omega(u) = sum_k omega_k psi_k(u).
double phi_omega(const std::string& omega, const PackingFamily& family, double u);
/// f_omega(x) = phi_omega(x_1).
double f_omega(const std::string& omega, const PackingFamily& family, std::span<const double> x);

/// f_omega as a one-component ridge function with xi = e_1 in R^d.
RidgeSpec omega_ridge_spec(const std::string& omega, const PackingFamily& family, int d);

int hamming(const std::string& a, const std::string& b);

struct VgCode {
  std::vector<std::string> codewords;
  int target_count = 0;     // ceil(2^{N_hat/8})
  int target_distance = 0;  // ceil(N_hat/8)
  int min_distance = 0;     // over distinct pairs; N_hat when fewer than two words
  bool complete = false;    // target count reached
  int restarts_used = 0;
};

/// Binary code of length N_hat with at least 2^{N_hat/8} words at pairwise
/// Hamming distance >= N_hat/8. Greedy over all words in lexicographic order
/// for N_hat <= 20, randomized greedy with restarts beyond. Stops at the
/// target count. When the search falls short the best code found is returned
/// with complete = false. Requires 8 <= N_hat <= 96.
VgCode vg_code(int N_hat, std::uint64_t seed, int max_restarts = 16);

/// Composite Simpson rule on [a, b] with `panels` subintervals (rounded up to
/// an even count).
double simpson(const std::function<double(double)>& fn, double a, double b, int panels);

/// Integral over [-1, 1] of (f_i - f_j)^2 in Lebesgue measure, with panels
/// aligned to the cell boundaries.
double packing_distance_sq(const std::string& omega_i, const std::string& omega_j,
                           const PackingFamily& family, int quadrature_n);

struct TwoPointMasses {
  double plus = 0.0;   // mass at y = T
  double minus = 0.0;  // mass at y = -T
};

/// (T + f)/2T at y = T and (T - f)/2T at y = -T. Throws NumericalError when
/// |f| >= T.
TwoPointMasses two_point_masses(double f, double T);

/// T = 4 m G.
double two_point_level(int m, double G);

struct KlResult {
  double kl = 0.0;
  double l2_mu_sq = 0.0;  // ||f_i - f_j||^2 under mu
  double bound = 0.0;     // 16/(15 T^2) ||f_i - f_j||^2 under mu
};

/// KL(rho_{f_i} || rho_{f_j}) for the two-point conditional laws, integrated
/// over x1 with mu uniform on [-1, 1] by Simpson's rule on quadrature_n
/// panels. Throws NumericalError when |f_i| or |f_j| reaches T on the grid.
KlResult kl_two_point(const std::function<double(double)>& f_i,
                      const std::function<double(double)>& f_j, double T, int quadrature_n);

/// c_tau = 2304 tau1 ||K||_2^2 / (15 T^2) + 1.
double c_tau(double tau1, double T, double K_norm_sq);

}  // namespace ridgekit
