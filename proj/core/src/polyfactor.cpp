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

#include "ridgekit/polyfactor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ridgekit {

using cd = std::complex<double>;

FilterSequence::FilterSequence(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double FilterSequence::l1_norm() const {
  double s = 0.0;
  for (double v : coeffs_) s += std::abs(v);
  return s;
}

double FilterSequence::sup_norm() const {
  double s = 0.0;
  for (double v : coeffs_) s = std::max(s, std::abs(v));
  return s;
}

FilterSequence FilterSequence::scaled(double factor) const {
  std::vector<double> out(coeffs_);
  for (auto& v : out) v *= factor;
  return FilterSequence(std::move(out));
}

FilterSequence convolve(const FilterSequence& a, const FilterSequence& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  for (std::size_t k = 0; k < bc.size(); ++k) {
    for (std::size_t j = 0; j < ac.size(); ++j) out[j + k] += ac[j] * bc[k];
  }
  return FilterSequence(std::move(out));
}

FilterSequence convolve_all(std::span<const FilterSequence> filters) {
  FilterSequence acc = FilterSequence::delta();
  for (const auto& f : filters) acc = convolve(f, acc);
  return acc;
}

double cauchy_bound(const FilterSequence& monic) {
  if (monic.degree() < 1) {
    throw std::invalid_argument("cauchy_bound: sequence must have degree >= 1");
  }
  if (monic.leading() != 1.0) {
    throw std::invalid_argument("cauchy_bound: leading coefficient must be 1 (normalize first)");
  }
  double m = 0.0;
  const auto c = monic.coeffs();
  for (std::size_t j = 0; j + 1 < c.size(); ++j) m = std::max(m, std::abs(c[j]));
  return 1.0 + m;
}

std::complex<double> evaluate_symbol(std::span<const double> coeffs, cd z) {
  cd p = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * z + *it;
  return p;
}

namespace {

// p(z) and p'(z) by Horner.
std::pair<cd, cd> horner2(std::span<const double> a, cd z) {
  cd p = 0.0;
  cd dp = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

double residual_scale(std::span<const double> w, cd r, double tol) {
  double mx = 0.0;
  for (double v : w) mx = std::max(mx, std::abs(v));
  const double K = static_cast<double>(w.size() - 1);
  return tol * std::pow(1.0 + std::abs(r), K) * mx;
}

// Aberth-Ehrlich on a monic polynomial of degree >= 1 with nonzero constant
// term.
std::vector<cd> aberth(std::span<const double> a, const RootOptions& opt) {
  const std::size_t n = a.size() - 1;
  std::vector<cd> z(n);
  if (n == 1) {
    z[0] = -a[0];
    return z;
  }
  double radius = 0.0;
  for (std::size_t j = 0; j < n; ++j) radius = std::max(radius, std::abs(a[j]));
  radius += 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, theta);
  }

  int residual_ok_streak = 0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    double max_step = 0.0;
    bool residual_ok = true;
    for (std::size_t k = 0; k < n; ++k) {
      auto [p, dp] = horner2(a, z[k]);
      if (p == 0.0) continue;
      if (std::abs(p) > residual_scale(a, z[k], opt.tol)) residual_ok = false;
      if (dp == 0.0) dp = cd(std::numeric_limits<double>::epsilon(), 0.0);
      const cd ratio = p / dp;
      cd repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        const cd diff = z[k] - z[j];
        if (diff != 0.0) repulsion += 1.0 / diff;
      }
      const cd step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (max_step <= opt.tol * 1e-3) return z;
    // Clustered roots converge slowly in position; accept them once the
    // residual criterion has held for a while.
    residual_ok_streak = residual_ok ? residual_ok_streak + 1 : 0;
    if (residual_ok_streak >= 25) return z;
  }
  return z;
}

void newton_polish(std::span<const double> a, cd& z) {
  auto [p, dp] = horner2(a, z);
  for (int i = 0; i < 4 && p != 0.0 && dp != 0.0; ++i) {
    const cd candidate = z - p / dp;
    const auto [pc, dpc] = horner2(a, candidate);
    if (!(std::abs(pc) < std::abs(p))) break;
    z = candidate;
    p = pc;
    dp = dpc;
  }
}

// Makes conjugate pairs exact and snaps unpaired near-real roots to the axis.
std::vector<cd> enforce_conjugates(std::vector<cd> roots) {
  std::vector<cd> out;
  out.reserve(roots.size());
  while (!roots.empty()) {
    auto top = std::max_element(roots.begin(), roots.end(),
                                [](cd x, cd y) { return x.imag() < y.imag(); });
    const cd r = *top;
    if (r.imag() <= 1e-12 * (1.0 + std::abs(r))) {
      for (cd v : roots) out.emplace_back(v.real(), 0.0);
      break;
    }
    roots.erase(top);
    auto partner = std::min_element(roots.begin(), roots.end(), [&](cd x, cd y) {
      return std::abs(x - std::conj(r)) < std::abs(y - std::conj(r));
    });
    const cd p = *partner;
    roots.erase(partner);
    const double re = 0.5 * (r.real() + p.real());
    const double im = 0.5 * (r.imag() - p.imag());
    out.emplace_back(re, im);
    out.emplace_back(re, -im);
  }
  return out;
}

}  // namespace

std::vector<cd> find_roots(const FilterSequence& w, const RootOptions& options) {
  const int K = w.degree();
  if (K < 1) throw std::invalid_argument("find_roots: sequence must have degree >= 1");
  const auto c = w.coeffs();

  std::size_t zeros = 0;
  while (c[zeros] == 0.0) ++zeros;
  const double lead = w.leading();
  std::vector<double> monic(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end());
  for (auto& v : monic) v /= lead;

  std::vector<cd> roots;
  if (monic.size() > 1) {
    roots = aberth(monic, options);
    for (auto& r : roots) newton_polish(monic, r);
    roots = enforce_conjugates(std::move(roots));
  }
  roots.insert(roots.end(), zeros, cd(0.0, 0.0));

  std::vector<double> residuals;
  residuals.reserve(roots.size());
  bool ok = true;
  for (cd r : roots) {
    const double res = std::abs(evaluate_symbol(c, r));
    residuals.push_back(res);
    if (!(res <= residual_scale(c, r, options.tol))) ok = false;
  }
  if (!ok) {
    std::ostringstream msg;
    msg << "find_roots: residual criterion failed for degree " << K
        << " polynomial after " << options.max_iterations << " iterations";
    throw RootFindingError(msg.str(), std::move(residuals));
  }
  return roots;
}

std::vector<FilterSequence> factorize_filter(const FilterSequence& w, int S,
                                             const RootOptions& options) {
  if (S < 2) throw std::invalid_argument("factorize_filter: S must be >= 2");
  if (w.empty()) throw std::invalid_argument("factorize_filter: zero sequence has no factorization");
  if (w.degree() <= S) return {w};

  const auto roots = find_roots(w, options);

  // Real linear factors and conjugate-pair quadratics, ordered by (re, im).
  struct Piece {
    double re;
    double im;
    std::vector<double> poly;
  };
  std::vector<Piece> pieces;
  for (cd r : roots) {
    if (r.imag() == 0.0) {
      pieces.push_back({r.real(), 0.0, {-r.real(), 1.0}});
    } else if (r.imag() > 0.0) {
      pieces.push_back({r.real(), r.imag(), {std::norm(r), -2.0 * r.real(), 1.0}});
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
    return x.re != y.re ? x.re < y.re : x.im < y.im;
  });

  // Next-fit packing: a bin is closed only when the next piece does not fit,
  // so every closed bin holds degree >= S-1.
  std::vector<FilterSequence> factors;
  FilterSequence current = FilterSequence::delta();
  for (const auto& piece : pieces) {
    const int piece_degree = static_cast<int>(piece.poly.size()) - 1;
    if (current.degree() + piece_degree > S) {
      factors.push_back(current);
      current = FilterSequence::delta();
    }
    current = convolve(current, FilterSequence(piece.poly));
  }
  if (current.degree() > 0 || factors.empty()) factors.push_back(current);

  factors.front() = factors.front().scaled(w.leading());
  return factors;
}

}  // namespace ridgekit
