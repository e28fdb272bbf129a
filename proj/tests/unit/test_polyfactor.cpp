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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "ridgekit/polyfactor.hpp"

using ridgekit::FilterSequence;

namespace {

std::vector<double> to_vec(const FilterSequence& f) { return {f.coeffs().begin(), f.coeffs().end()}; }

double rel_sup_diff(const FilterSequence& a, const FilterSequence& b) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(std::max(a.size(), b.size()));
  double err = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) err = std::max(err, std::abs(a[i] - b[i]));
  return err / std::max(b.sup_norm(), 1e-300);
}

FilterSequence random_filter(oracle::Gen& gen, int support) {
  std::vector<double> w(static_cast<std::size_t>(support));
  for (auto& v : w) v = gen.uniform(-1.0, 1.0);
  return FilterSequence(w);
}

}  // namespace

TEST(FilterSequence, TrimsTrailingZerosAndReportsDegree) {
  FilterSequence f({1.0, 2.0, 0.0, 0.0});
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.degree(), 1);
  EXPECT_EQ(f[5], 0.0);
  EXPECT_EQ(f[-1], 0.0);
  EXPECT_TRUE(FilterSequence({0.0, 0.0}).empty());
  EXPECT_EQ(FilterSequence().degree(), -1);
}

TEST(FilterSequence, Norms) {
  FilterSequence f({1.0, -3.0, 2.0});
  EXPECT_DOUBLE_EQ(f.l1_norm(), 6.0);
  EXPECT_DOUBLE_EQ(f.sup_norm(), 3.0);
  EXPECT_DOUBLE_EQ(f.leading(), 2.0);
  EXPECT_EQ(f.scaled(2.0), FilterSequence({2.0, -6.0, 4.0}));
}

TEST(Convolve, MatchesSchoolbookProduct) {
  oracle::Gen gen(11);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_filter(gen, gen.integer(1, 8));
    const auto b = random_filter(gen, gen.integer(1, 8));
    const auto expect = oracle::convolve(to_vec(a), to_vec(b));
    const auto got = ridgekit::convolve(a, b);
    ASSERT_EQ(got.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(got.coeffs()[i], expect[i], 1e-14);
  }
}

TEST(Convolve, ConvolveAllOfNothingIsDelta) {
  EXPECT_EQ(ridgekit::convolve_all({}), FilterSequence::delta());
}

TEST(Convolve, IsCommutative) {
  oracle::Gen gen(3);
  const auto a = random_filter(gen, 4);
  const auto b = random_filter(gen, 5);
  EXPECT_LT(rel_sup_diff(ridgekit::convolve(a, b), ridgekit::convolve(b, a)), 1e-15);
}

TEST(CauchyBound, ExampleAndContainsRoots) {
  EXPECT_DOUBLE_EQ(ridgekit::cauchy_bound(FilterSequence({-2.0, 0.5, 1.0})), 3.0);
  oracle::Gen gen(5);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> w(static_cast<std::size_t>(gen.integer(3, 10)));
    for (auto& v : w) v = gen.uniform(-3.0, 3.0);
    w.back() = 1.0;
    const FilterSequence f(w);
    const double bound = ridgekit::cauchy_bound(f);
    for (auto r : ridgekit::find_roots(f)) EXPECT_LE(std::abs(r), bound * (1.0 + 1e-12));
  }
}

TEST(CauchyBound, RejectsNonMonic) {
  EXPECT_THROW(ridgekit::cauchy_bound(FilterSequence({1.0, 2.0})), std::invalid_argument);
}

TEST(FindRoots, RecoversKnownRoots) {
  // (z - 1)(z - 2)(z^2 + 1) = z^4 - 3z^3 + 3z^2 - 3z + 2
  const FilterSequence f({2.0, -3.0, 3.0, -3.0, 1.0});
  auto roots = ridgekit::find_roots(f);
  ASSERT_EQ(roots.size(), 4u);
  const std::vector<std::complex<double>> expect{{1, 0}, {2, 0}, {0, 1}, {0, -1}};
  for (auto e : expect) {
    double best = 1e9;
    for (auto r : roots) best = std::min(best, std::abs(r - e));
    EXPECT_LT(best, 1e-10);
  }
}

TEST(FindRoots, ConjugatePairsAreExact) {
  oracle::Gen gen(21);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_filter(gen, 9);
    auto roots = ridgekit::find_roots(f);
    for (auto r : roots) {
      if (r.imag() == 0.0) continue;
      const auto conj = std::conj(r);
      const bool found = std::any_of(roots.begin(), roots.end(), [&](auto s) { return s == conj; });
      EXPECT_TRUE(found);
    }
  }
}

TEST(FindRoots, ResidualsSmall) {
  oracle::Gen gen(8);
  for (int t = 0; t < 30; ++t) {
    const auto f = random_filter(gen, gen.integer(3, 12));
    for (auto r : ridgekit::find_roots(f)) {
      const double scale = std::pow(1.0 + std::abs(r), f.degree()) * f.sup_norm();
      EXPECT_LE(std::abs(ridgekit::evaluate_symbol(f.coeffs(), r)), 1e-12 * scale);
    }
  }
}

TEST(FindRoots, RepeatedRoot) {
  // (z - 1)^2 (z + 2)
  const FilterSequence f({2.0, -3.0, 0.0, 1.0});
  const auto roots = ridgekit::find_roots(f);
  ASSERT_EQ(roots.size(), 3u);
  const FilterSequence rebuilt = [&] {
    std::vector<double> p{1.0};
    for (auto r : roots) {
      EXPECT_NEAR(r.imag(), 0.0, 1e-6);
      p = oracle::convolve(p, {-r.real(), 1.0});
    }
    return FilterSequence(p);
  }();
  EXPECT_LT(rel_sup_diff(rebuilt, f), 1e-10);
}

TEST(FindRoots, ZeroRootsStripped) {
  const FilterSequence f({0.0, 0.0, -1.0, 1.0});  // z^2 (z - 1)
  auto roots = ridgekit::find_roots(f);
  ASSERT_EQ(roots.size(), 3u);
  int zeros = 0;
  for (auto r : roots) zeros += r == std::complex<double>(0.0, 0.0);
  EXPECT_EQ(zeros, 2);
}

TEST(Factorize, ShortFilterReturnedUnchanged) {
  const FilterSequence f({0.3, -0.2, 0.9});
  const auto factors = ridgekit::factorize_filter(f, 2);
  ASSERT_EQ(factors.size(), 1u);
  EXPECT_EQ(factors[0], f);
}

TEST(Factorize, RoundTripRandomFilters) {
  oracle::Gen gen(1234);
  for (int t = 0; t < 60; ++t) {
    const int S = gen.integer(2, 4);
    const auto W = random_filter(gen, gen.integer(2, 12));
    if (W.empty()) continue;
    const auto factors = ridgekit::factorize_filter(W, S);
    const int K = W.degree();
    const int bound = std::max(1, (K + S - 2) / (S - 1));
    EXPECT_LE(static_cast<int>(factors.size()), bound);
    for (const auto& f : factors) EXPECT_LE(f.degree(), S);
    // Product in layer order w^(p) * ... * w^(1) via the schoolbook oracle.
    std::vector<double> prod{1.0};
    for (const auto& f : factors) prod = oracle::convolve(prod, to_vec(f));
    EXPECT_LT(rel_sup_diff(FilterSequence(prod), W), 1e-8) << "trial " << t;
  }
}

TEST(Factorize, LeadingZeroTapsBecomeShifts) {
  const FilterSequence W({0.0, 0.0, 0.0, 0.5, -0.25, 0.1, 0.7});
  const auto factors = ridgekit::factorize_filter(W, 2);
  EXPECT_LT(rel_sup_diff(ridgekit::convolve_all(factors), W), 1e-10);
}

TEST(Factorize, RejectsBadInput) {
  EXPECT_THROW(ridgekit::factorize_filter(FilterSequence({1.0, 2.0, 3.0}), 1), std::invalid_argument);
  EXPECT_THROW(ridgekit::factorize_filter(FilterSequence(), 2), std::invalid_argument);
}

TEST(EvaluateSymbol, Horner) {
  const FilterSequence f({1.0, 2.0, 3.0});
  const auto v = ridgekit::evaluate_symbol(f.coeffs(), {0.0, 1.0});
  EXPECT_NEAR(v.real(), -2.0, 1e-15);
  EXPECT_NEAR(v.imag(), 2.0, 1e-15);
}
