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
#include <span>
#include <string>
#include <vector>

#include "ridgekit/convnet.hpp"
#include "ridgekit/ridge.hpp"

namespace ridgekit {

/// Sample {(x_i, y_i)} with x_i in the unit ball and |y_i| <= M.
struct Dataset {
  int d = 0;
  std::vector<std::vector<double>> xs;
  std::vector<double> ys;
  std::uint64_t seed = 0;

  std::size_t size() const { return ys.size(); }
};

/// y = f(x) + eps with x uniform on the unit ball and eps uniform on
/// [-noise_level, noise_level]. Requires sum_j G_j + noise_level <= M.
Dataset sample_dataset(const RidgeSpec& spec, std::size_t n, double noise_level, double M,
                       std::uint64_t seed);

/// Projection onto [-M, M].
inline double clip(double v, double M) { return v < -M ? -M : (v > M ? M : v); }

/// Rows relu(<xi_j, x> - t_i), the top-layer activations of the constructed
/// network written out directly. Row-major, n x m(2N+3).
std::vector<double> feature_matrix(std::span<const std::vector<double>> directions, int N,
                                   const std::vector<std::vector<double>>& xs);

/// Least-squares fit of the output coefficients with the constructed
/// convolutional and fully connected layers held fixed:
///   min_c sum_i (c . h^(J+1)(x_i) - y_i)^2 + ridge_eps ||c||^2,
/// solved through the normal equations. Throws NumericalError if the system is
/// singular, which is always the case for ridge_eps = 0 since the features for
/// t_{2N+2} and t_{2N+3} vanish on [-1, 1].
ConvNetModel fit_coefficients(std::span<const std::vector<double>> directions, int S, int N,
                              double M, const Dataset& data, double ridge_eps);

/// (1/n) sum_i (f(x_i) - y_i)^2 with the unclipped network output.
double empirical_risk(const ConvNetModel& model, const Dataset& data);

/// Free parameters of a model in a fixed order: per layer the S+1 filter
/// taps, then the restricted bias as S head entries, one shared middle value
/// and S tail entries; then fc_bias; then c.
std::vector<double> flatten_parameters(const ConvNetModel& model);
/// Inverse of flatten_parameters, using `shape` for dimensions.
ConvNetModel unflatten_parameters(const ConvNetModel& shape, std::span<const double> params);

/// Gradient of the empirical risk over `indices` of the data (all rows when
/// empty) with respect to flatten_parameters(model). ReLU subgradient 0 at
/// the kink.
std::vector<double> risk_gradient(const ConvNetModel& model, const Dataset& data,
                                  std::span<const std::size_t> indices = {});

class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, int epoch) : NumericalError(what), epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

struct GradientDescentOptions {
  double lr = 1e-3;
  int epochs = 10;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
};

/// Mini-batch gradient descent on the empirical risk over every parameter.
/// A heuristic trainer, not the exact empirical risk minimizer. Returns the
/// best iterate seen (risk never above the initial one); throws
/// DivergenceError when the risk exceeds ten times the initial risk.
ConvNetModel fit_full_gd(const ConvNetModel& init, const Dataset& data,
                         const GradientDescentOptions& options);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

enum class Clipping { On, Off };

/// Monte Carlo estimate of ||pi_M f_model - f||^2 under the uniform
/// distribution on the unit ball.
MonteCarloEstimate l2_error_estimate(const ConvNetModel& model, const RidgeSpec& spec, int n_test,
                                     std::uint64_t seed, Clipping clipping = Clipping::On);
double l2_error(const ConvNetModel& model, const RidgeSpec& spec, int n_test, std::uint64_t seed,
                Clipping clipping = Clipping::On);

struct ExperimentConfig {
  RidgeSpec spec;
  std::vector<std::size_t> sizes;
  int trials = 1;
  double alpha = 1.0;
  double noise_level = 0.0;
  std::uint64_t base_seed = 0;
  double M = 1.0;
  int S = 2;
  double ridge_eps = 1e-8;
  int n_test = 20000;
  int threads = 1;
};

struct RateRow {
  std::size_t n = 0;
  int trial = 0;
  int N = 0;
  double mse = 0.0;
  bool ok = true;
  std::string error;
};

struct RateExperimentResult {
  std::vector<RateRow> rows;  // sorted by (n, trial)
  double fitted_slope = 0.0;
  double slope_stderr = 0.0;
  bool slope_fitted = false;
};

/// For each n, N = ceil(n^{1/(1+2 alpha)}); fits coefficients on each trial
/// (data seed base_seed + trial) and records the clipped L2 error; then fits
/// log(mean mse) against log n by ordinary least squares. The slope is not
/// fitted when any mean error is at or below 1e-12.
RateExperimentResult rate_experiment(const ExperimentConfig& config);

/// N = ceil(n^{1/(1+2 alpha)}), robust to pow rounding at exact powers.
int resolution_for(std::size_t n, double alpha);

/// Header `n,trial,mse`, one row per successful trial, then
/// `# slope=<v> stderr=<v>`; 10 significant digits.
std::string rate_csv(const RateExperimentResult& result);

/// Threads to use: RIDGEKIT_THREADS if set and positive, else the hardware
/// concurrency.
int default_thread_count();

}  // namespace ridgekit
