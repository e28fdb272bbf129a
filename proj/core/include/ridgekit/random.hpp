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
#include <random>
#include <span>
#include <vector>

namespace ridgekit {

/// Seeded random source. Only the engine comes from <random>; the uniform and
/// normal transforms are written out so streams are identical across standard
/// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Uniform point in the closed unit ball of R^d: a normalized Gaussian
/// direction scaled by U^{1/d}.
std::vector<double> sample_unit_ball(Rng& rng, int d);

/// Halton low-discrepancy sequence with a seeded Cranley-Patterson shift.
class HaltonSequence {
 public:
  HaltonSequence(int dim, std::uint64_t seed);

  /// Next point in [0, 1)^dim.
  std::vector<double> next();
  int dim() const { return static_cast<int>(shift_.size()); }

 private:
  std::vector<double> shift_;
  std::uint64_t index_ = 1;
};

/// Maps a point of [0,1)^(2 ceil(d/2) + 1) to the unit ball of R^d. Box-Muller on
/// coordinate pairs gives the direction, the last coordinate the radius.
std::vector<double> cube_to_ball(std::span<const double> u, int d);

}  // namespace ridgekit
