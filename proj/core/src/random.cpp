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

#include "ridgekit/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ridgekit {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = uniform(-1.0, 1.0);
    v = uniform(-1.0, 1.0);
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

std::vector<double> sample_unit_ball(Rng& rng, int d) {
  if (d < 1) throw std::invalid_argument("sample_unit_ball: dimension must be positive");
  std::vector<double> x(static_cast<std::size_t>(d));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& v : x) {
      v = rng.normal();
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double radius = std::pow(rng.uniform(), 1.0 / d);
  const double scale = radius / std::sqrt(norm2);
  for (auto& v : x) v *= scale;
  return x;
}

namespace {

constexpr std::array<int, 40> kPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
    f /= base;
  }
  return result;
}

}  // namespace

HaltonSequence::HaltonSequence(int dim, std::uint64_t seed) {
  if (dim < 1 || dim > static_cast<int>(kPrimes.size())) {
    throw std::invalid_argument("HaltonSequence: dimension out of range [1, 40]");
  }
  Rng rng(seed);
  shift_.resize(static_cast<std::size_t>(dim));
  for (auto& s : shift_) s = rng.uniform();
}

std::vector<double> HaltonSequence::next() {
  std::vector<double> p(shift_.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    double v = radical_inverse(index_, kPrimes[k]) + shift_[k];
    if (v >= 1.0) v -= 1.0;
    p[k] = v;
  }
  ++index_;
  return p;
}

std::vector<double> cube_to_ball(std::span<const double> u, int d) {
  const std::size_t pairs = static_cast<std::size_t>((d + 1) / 2);
  if (u.size() < 2 * pairs + 1) {
    throw std::invalid_argument("cube_to_ball: need 2*ceil(d/2)+1 coordinates");
  }
  std::vector<double> x(static_cast<std::size_t>(d));
  double norm2 = 0.0;
  for (std::size_t p = 0; p < pairs; ++p) {
    // Keep the radius argument away from log(0).
    const double a = std::max(u[2 * p], 1e-300);
    const double r = std::sqrt(-2.0 * std::log(a));
    const double theta = 2.0 * std::numbers::pi * u[2 * p + 1];
    const std::size_t i = 2 * p;
    x[i] = r * std::cos(theta);
    norm2 += x[i] * x[i];
    if (i + 1 < x.size()) {
      x[i + 1] = r * std::sin(theta);
      norm2 += x[i + 1] * x[i + 1];
    }
  }
  if (norm2 == 0.0) {
    x[0] = 1.0;
    norm2 = 1.0;
  }
  const double radius = std::pow(u[2 * pairs], 1.0 / d);
  const double scale = radius / std::sqrt(norm2);
  for (auto& v : x) v *= scale;
  return x;
}

}  // namespace ridgekit
