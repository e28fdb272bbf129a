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

#include "ridgekit/minimax.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ridgekit/errors.hpp"
#include "ridgekit/random.hpp"

namespace ridgekit {

namespace {

void check_bump_params(double alpha, double G, double L) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("bump: alpha must lie in (0, 1]");
  if (!(G > 0.0) || !(L > 0.0)) throw std::invalid_argument("bump: G and L must be positive");
}

void check_omega(const std::string& omega, const PackingFamily& family) {
  if (static_cast<int>(omega.size()) != family.N_hat) {
    std::ostringstream msg;
    msg << "codeword has length " << omega.size() << ", expected N_hat = " << family.N_hat;
    throw std::invalid_argument(msg.str());
  }
  for (char ch : omega) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("codeword must contain only 0 and 1");
  }
}

using Word = std::array<std::uint64_t, 2>;

int distance(const Word& a, const Word& b) {
  return std::popcount(a[0] ^ b[0]) + std::popcount(a[1] ^ b[1]);
}

std::string to_string(const Word& w, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k) {
    if ((w[static_cast<std::size_t>(k / 64)] >> (k % 64)) & 1U) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

bool far_from_all(const Word& w, const std::vector<Word>& code, int dist) {
  return std::all_of(code.begin(), code.end(),
                     [&](const Word& c) { return distance(w, c) >= dist; });
}

}  // namespace

double bump_kappa(double alpha, double G, double L) {
  check_bump_params(alpha, G, L);
  return std::min(std::exp2(alpha) * G, L / 2.0);
}

double bump_K(double u, double alpha, double G, double L) {
  const double r = 0.5 - std::abs(u);
  if (!(r > 0.0)) return 0.0;
  return bump_kappa(alpha, G, L) * std::pow(r, alpha);
}

double bump_norm_sq(double alpha, double G, double L) {
  const double kappa = bump_kappa(alpha, G, L);
  return kappa * kappa * std::exp2(-2.0 * alpha) / (2.0 * alpha + 1.0);
}

double cell_center(int k, int N_hat) {
  if (N_hat < 1 || k < 1 || k > N_hat) throw std::out_of_range("cell_center: k out of range");
  return -1.0 + static_cast<double>(2 * k - 1) / N_hat;
}

PackingFamily make_family(int N_hat, double alpha, double G, double L,
                          std::vector<std::string> codewords) {
  if (N_hat < 1) throw std::invalid_argument("make_family: N_hat must be >= 1");
  check_bump_params(alpha, G, L);
  PackingFamily family;
  family.N_hat = N_hat;
  family.alpha = alpha;
  family.G = G;
  family.L = L;
  for (int k = 1; k <= N_hat; ++k) family.centers.push_back(cell_center(k, N_hat));
  for (const auto& w : codewords) check_omega(w, family);
  family.codewords = std::move(codewords);
  return family;
}

double psi(int k, const PackingFamily& family, double x1) {
  if (k < 1 || k > family.N_hat) throw std::out_of_range("psi: k out of range");
  const double u_k = family.centers[static_cast<std::size_t>(k - 1)];
  const double s = 0.5 * family.N_hat * (x1 - u_k);
  return std::pow(static_cast<double>(family.N_hat), -family.alpha) *
         bump_K(s, family.alpha, family.G, family.L);
}

double phi_omega(const std::string& omega, const PackingFamily& family, double u) {
  check_omega(omega, family);
  const int n = family.N_hat;
  const int k0 = std::clamp(static_cast<int>(std::floor((u + 1.0) * n / 2.0)) + 1, 1, n);
  double v = 0.0;
  for (int k = std::max(1, k0 - 1); k <= std::min(n, k0 + 1); ++k) {
    if (omega[static_cast<std::size_t>(k - 1)] == '1') v += psi(k, family, u);
  }
  return v;
}

double f_omega(const std::string& omega, const PackingFamily& family, std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("f_omega: empty point");
  return phi_omega(omega, family, x[0]);
}

RidgeSpec omega_ridge_spec(const std::string& omega, const PackingFamily& family, int d) {
  check_omega(omega, family);
  if (d < 1) throw std::invalid_argument("omega_ridge_spec: d must be positive");
  RidgeSpec spec;
  spec.d = d;
  RidgeComponent comp;
  comp.xi.assign(static_cast<std::size_t>(d), 0.0);
  comp.xi[0] = 1.0;
  comp.g = Univariate::custom([omega, family](double u) { return phi_omega(omega, family, u); },
                              "phi_" + omega);
  comp.alpha = family.alpha;
  comp.L = family.L;
  comp.G = family.G;
  spec.components.push_back(std::move(comp));
  return spec;
}

int hamming(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming: length mismatch");
  int h = 0;
  for (std::size_t i = 0; i < a.size(); ++i) h += a[i] != b[i];
  return h;
}

VgCode vg_code(int N_hat, std::uint64_t seed, int max_restarts) {
  if (N_hat < 8) throw std::invalid_argument("vg_code: N_hat must be >= 8");
  if (N_hat > 96) throw std::invalid_argument("vg_code: N_hat above 96 is not supported");
  if (max_restarts < 1) throw std::invalid_argument("vg_code: max_restarts must be >= 1");

  VgCode out;
  out.target_count = static_cast<int>(std::ceil(std::exp2(N_hat / 8.0)));
  out.target_distance = (N_hat + 7) / 8;
  const std::size_t target = static_cast<std::size_t>(out.target_count);

  std::vector<Word> best;
  if (N_hat <= 20) {
    // Words in lexicographic order of their string form: bit k of the word is
    // character k, so count down from the most significant character.
    const std::uint64_t total = std::uint64_t{1} << N_hat;
    for (std::uint64_t v = 0; v < total && best.size() < target; ++v) {
      Word w{0, 0};
      for (int k = 0; k < N_hat; ++k) {
        if ((v >> (N_hat - 1 - k)) & 1U) w[0] |= std::uint64_t{1} << k;
      }
      if (far_from_all(w, best, out.target_distance)) best.push_back(w);
    }
    out.restarts_used = 0;
  } else {
    const std::size_t attempts = 200 * target + 1000;
    for (int r = 0; r < max_restarts && best.size() < target; ++r) {
      Rng rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r));
      std::vector<Word> code;
      for (std::size_t a = 0; a < attempts && code.size() < target; ++a) {
        Word w{rng.next(), rng.next()};
        if (N_hat < 64) {
          w[0] &= (std::uint64_t{1} << N_hat) - 1;
          w[1] = 0;
        } else if (N_hat < 128) {
          w[1] &= (std::uint64_t{1} << (N_hat - 64)) - 1;
        }
        if (far_from_all(w, code, out.target_distance)) code.push_back(w);
      }
      out.restarts_used = r + 1;
      if (code.size() > best.size()) best = std::move(code);
    }
  }

  out.complete = best.size() >= target;
  out.min_distance = N_hat;
  for (std::size_t i = 0; i < best.size(); ++i) {
    for (std::size_t j = i + 1; j < best.size(); ++j) {
      out.min_distance = std::min(out.min_distance, distance(best[i], best[j]));
    }
  }
  for (const auto& w : best) out.codewords.push_back(to_string(w, N_hat));
  return out;
}

double simpson(const std::function<double(double)>& fn, double a, double b, int panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double s = fn(a) + fn(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * fn(a + i * h);
  return s * h / 3.0;
}

double packing_distance_sq(const std::string& omega_i, const std::string& omega_j,
                           const PackingFamily& family, int quadrature_n) {
  check_omega(omega_i, family);
  check_omega(omega_j, family);
  const int step = 2 * family.N_hat;
  const int panels = std::max(1, (quadrature_n + step - 1) / step) * step;
  return simpson(
      [&](double u) {
        const double diff = phi_omega(omega_i, family, u) - phi_omega(omega_j, family, u);
        return diff * diff;
      },
      -1.0, 1.0, panels);
}

double two_point_level(int m, double G) { return 4.0 * m * G; }

TwoPointMasses two_point_masses(double f, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("two_point_masses: T must be positive");
  if (!(std::abs(f) < T)) {
    std::ostringstream msg;
    msg << "two-point measure undefined: |f| = " << std::abs(f) << " >= T = " << T;
    throw NumericalError(msg.str());
  }
  return {(T + f) / (2.0 * T), (T - f) / (2.0 * T)};
}

KlResult kl_two_point(const std::function<double(double)>& f_i,
                      const std::function<double(double)>& f_j, double T, int quadrature_n) {
  int panels = std::max(2, quadrature_n);
  if (panels % 2 != 0) ++panels;
  const double h = 2.0 / panels;
  double kl = 0.0;
  double l2 = 0.0;
  for (int k = 0; k <= panels; ++k) {
    const double u = -1.0 + k * h;
    const double weight = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    const double a = f_i(u);
    const double b = f_j(u);
    const TwoPointMasses p = two_point_masses(a, T);
    two_point_masses(b, T);
    const double term = p.plus * std::log1p((a - b) / (T + b)) +
                        p.minus * std::log1p((b - a) / (T - b));
    kl += weight * term;
    l2 += weight * (a - b) * (a - b);
  }
  // mu has density 1/2 on [-1, 1].
  KlResult out;
  out.kl = 0.5 * kl * h / 3.0;
  out.l2_mu_sq = 0.5 * l2 * h / 3.0;
  out.bound = 16.0 / (15.0 * T * T) * out.l2_mu_sq;
  return out;
}

double c_tau(double tau1, double T, double K_norm_sq) {
  return 2304.0 * tau1 / (15.0 * T * T) * K_norm_sq + 1.0;
}

}  // namespace ridgekit
