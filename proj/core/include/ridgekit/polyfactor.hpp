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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ridgekit/errors.hpp"

namespace ridgekit {

/// A real sequence supported on {0, ..., K}. Entry k is the coefficient of
/// z^k in the symbol polynomial, so convolution of sequences is polynomial
/// multiplication. Trailing zeros are trimmed on construction; the zero
/// sequence is the empty one.
class FilterSequence {
 public:
  FilterSequence() = default;
  explicit FilterSequence(std::vector<double> coeffs);
  FilterSequence(std::initializer_list<double> coeffs)
      : FilterSequence(std::vector<double>(coeffs)) {}

  /// The delta sequence: identity element of convolution.
  static FilterSequence delta() { return FilterSequence({1.0}); }

  std::span<const double> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  /// Last index of the support (K), or -1 for the zero sequence.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Entry at index i; zero outside the support.
  double operator[](std::ptrdiff_t i) const {
    return (i < 0 || i >= static_cast<std::ptrdiff_t>(coeffs_.size()))
               ? 0.0
               : coeffs_[static_cast<std::size_t>(i)];
  }

  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  double l1_norm() const;
  double sup_norm() const;

  FilterSequence scaled(double factor) const;

  friend bool operator==(const FilterSequence&, const FilterSequence&) = default;

 private:
  std::vector<double> coeffs_;
};

/// (a*b)_i = sum_k a_{i-k} b_k.
FilterSequence convolve(const FilterSequence& a, const FilterSequence& b);

/// w[last] * ... * w[1] * w[0]; the delta sequence for an empty list.
FilterSequence convolve_all(std::span<const FilterSequence> filters);

/// 1 + max_{j<K} |W_j| for a monic W (W_K == 1, K >= 1). Every complex root of
/// the symbol lies in the disk of this radius.
double cauchy_bound(const FilterSequence& monic);

class RootFindingError : public NumericalError {
 public:
  RootFindingError(const std::string& what, std::vector<double> residuals)
      : NumericalError(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

struct RootOptions {
  double tol = 1e-12;
  int max_iterations = 1000;
};

/// All K roots (with multiplicity) of the symbol of W, via Aberth-Ehrlich
/// simultaneous iteration started on the Cauchy circle and Newton polishing.
/// Conjugate pairs are made exact and near-real roots snapped to the real
/// axis. Each root r satisfies |p(r)| <= tol * (1+|r|)^K * max_j |W_j|.
/// Throws RootFindingError (carrying the residuals) if that fails.
std::vector<std::complex<double>> find_roots(const FilterSequence& w,
                                             const RootOptions& options = {});

/// Writes W as w^(p) * ... * w^(1) with every factor supported on {0..S} and
/// p <= ceil(K/(S-1)). Returned in layer order: element 0 is w^(1). The
/// factors are built from the monic polynomial W / W_K and W_K is folded into
/// w^(1). A W that already fits in {0..S} is returned unchanged.
std::vector<FilterSequence> factorize_filter(const FilterSequence& w, int S,
                                             const RootOptions& options = {});

/// Evaluates the symbol polynomial at z.
std::complex<double> evaluate_symbol(std::span<const double> coeffs, std::complex<double> z);

}  // namespace ridgekit
