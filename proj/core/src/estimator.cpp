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

#include "ridgekit/estimator.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ridgekit/constructor.hpp"
#include "ridgekit/random.hpp"
#include "ridgekit/spline.hpp"

namespace ridgekit {

Dataset sample_dataset(const RidgeSpec& spec, std::size_t n, double noise_level, double M,
                       std::uint64_t seed) {
  if (!(noise_level >= 0.0)) throw std::invalid_argument("sample_dataset: noise_level must be >= 0");
  if (!(spec.sup_bound() + noise_level <= M)) {
    std::ostringstream msg;
    msg << "sample_dataset: M = " << M << " is smaller than sum_j G_j + noise_level = "
        << spec.sup_bound() + noise_level;
    throw std::invalid_argument(msg.str());
  }
  Dataset data;
  data.d = spec.d;
  data.seed = seed;
  data.xs.reserve(n);
  data.ys.reserve(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = sample_unit_ball(rng, spec.d);
    const double noise = noise_level > 0.0 ? rng.uniform(-noise_level, noise_level) : 0.0;
    data.ys.push_back(spec(x) + noise);
    data.xs.push_back(std::move(x));
  }
  return data;
}

std::vector<double> feature_matrix(std::span<const std::vector<double>> directions, int N,
                                   const std::vector<std::vector<double>>& xs) {
  const SplineGrid grid(N);
  const std::size_t block = static_cast<std::size_t>(grid.size());
  const std::size_t cols = directions.size() * block;
  std::vector<double> phi(xs.size() * cols);
  for (std::size_t r = 0; r < xs.size(); ++r) {
    for (std::size_t k = 0; k < directions.size(); ++k) {
      const double u = dot(directions[k], xs[r]);
      for (std::size_t i = 0; i < block; ++i) {
        phi[r * cols + k * block + i] = std::max(0.0, u - grid.nodes()[i]);
      }
    }
  }
  return phi;
}

ConvNetModel fit_coefficients(std::span<const std::vector<double>> directions, int S, int N,
                              double M, const Dataset& data, double ridge_eps) {
  if (!(ridge_eps >= 0.0)) throw std::invalid_argument("fit_coefficients: ridge_eps must be >= 0");
  if (data.size() == 0) throw std::invalid_argument("fit_coefficients: empty dataset");
  const int m = static_cast<int>(directions.size());
  const ConvStack stack = build_conv_stack(directions, data.d, S);
  ConvNetModel model = assemble_model(stack, data.d, S, m, N, M);

  const auto phi = feature_matrix(directions, N, data.xs);
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  const Eigen::Index p = static_cast<Eigen::Index>(model.c.size());
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      X(phi.data(), n, p);
  const Eigen::Map<const Eigen::VectorXd> y(data.ys.data(), n);

  Eigen::MatrixXd gram = X.transpose() * X;
  gram.diagonal().array() += ridge_eps;
  const Eigen::VectorXd rhs = X.transpose() * y;

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  const auto diag = ldlt.vectorD();
  const double dmax = diag.cwiseAbs().maxCoeff();
  const double dmin = diag.minCoeff();
  if (ldlt.info() != Eigen::Success || !(dmax > 0.0) ||
      !(dmin > 1e-13 * dmax)) {
    throw NumericalError(
        "fit_coefficients: normal equations are singular; use ridge_eps > 0");
  }
  const Eigen::VectorXd c = ldlt.solve(rhs);
  std::copy(c.data(), c.data() + p, model.c.begin());
  return model;
}

double empirical_risk(const ConvNetModel& model, const Dataset& data) {
  if (data.size() == 0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = forward(model, data.xs[i]) - data.ys[i];
    s += r * r;
  }
  return s / static_cast<double>(data.size());
}

namespace {

// Bias entries that are free parameters: all of them when the layer has no
// middle block, otherwise S head entries, one shared middle value, S tail.
bool has_middle(const ConvNetModel& model, int j) { return model.width(j) - 2 * model.S > 0; }

}  // namespace

std::vector<double> flatten_parameters(const ConvNetModel& model) {
  std::vector<double> p;
  const int S = model.S;
  for (int j = 1; j <= model.depth(); ++j) {
    const auto& layer = model.layers[static_cast<std::size_t>(j - 1)];
    for (int s = 0; s <= S; ++s) p.push_back(layer.filter[s]);
    const auto& b = layer.bias;
    if (has_middle(model, j)) {
      const int w = model.width(j);
      for (int i = 0; i < S; ++i) p.push_back(b[static_cast<std::size_t>(i)]);
      p.push_back(b[static_cast<std::size_t>(S)]);
      for (int i = w - S; i < w; ++i) p.push_back(b[static_cast<std::size_t>(i)]);
    } else {
      p.insert(p.end(), b.begin(), b.end());
    }
  }
  p.insert(p.end(), model.fc_bias.begin(), model.fc_bias.end());
  p.insert(p.end(), model.c.begin(), model.c.end());
  return p;
}

ConvNetModel unflatten_parameters(const ConvNetModel& shape, std::span<const double> params) {
  ConvNetModel model = shape;
  const int S = shape.S;
  std::size_t pos = 0;
  auto take = [&]() {
    if (pos >= params.size()) throw std::invalid_argument("unflatten_parameters: too few values");
    return params[pos++];
  };
  for (int j = 1; j <= model.depth(); ++j) {
    auto& layer = model.layers[static_cast<std::size_t>(j - 1)];
    std::vector<double> taps(static_cast<std::size_t>(S + 1));
    for (auto& t : taps) t = take();
    layer.filter = FilterSequence(std::move(taps));
    const int w = model.width(j);
    layer.bias.assign(static_cast<std::size_t>(w), 0.0);
    if (has_middle(model, j)) {
      for (int i = 0; i < S; ++i) layer.bias[static_cast<std::size_t>(i)] = take();
      const double mid = take();
      for (int i = S; i < w - S; ++i) layer.bias[static_cast<std::size_t>(i)] = mid;
      for (int i = w - S; i < w; ++i) layer.bias[static_cast<std::size_t>(i)] = take();
    } else {
      for (auto& v : layer.bias) v = take();
    }
  }
  for (auto& v : model.fc_bias) v = take();
  for (auto& v : model.c) v = take();
  if (pos != params.size()) throw std::invalid_argument("unflatten_parameters: too many values");
  return model;
}

std::vector<double> risk_gradient(const ConvNetModel& model, const Dataset& data,
                                  std::span<const std::size_t> indices) {
  model.check_shapes();
  const int J = model.depth();
  const int S = model.S;
  const int block = 2 * model.N + 3;

  // Gradient buffers in natural (unrestricted) layout.
  std::vector<std::vector<double>> g_filter(static_cast<std::size_t>(J),
                                            std::vector<double>(static_cast<std::size_t>(S + 1)));
  std::vector<std::vector<double>> g_bias(static_cast<std::size_t>(J));
  for (int j = 1; j <= J; ++j) g_bias[static_cast<std::size_t>(j - 1)].assign(
      static_cast<std::size_t>(model.width(j)), 0.0);
  std::vector<double> g_fc(model.fc_bias.size(), 0.0);
  std::vector<double> g_c(model.c.size(), 0.0);

  std::vector<std::size_t> all;
  if (indices.empty()) {
    all.resize(data.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    indices = all;
  }
  const double scale = 2.0 / static_cast<double>(indices.size());

  std::vector<std::vector<double>> pre(static_cast<std::size_t>(J));
  std::vector<std::vector<double>> act(static_cast<std::size_t>(J + 1));
  for (std::size_t idx : indices) {
    const auto& x = data.xs[idx];
    act[0].assign(x.begin(), x.end());
    for (int j = 1; j <= J; ++j) {
      const auto& layer = model.layers[static_cast<std::size_t>(j - 1)];
      auto z = toeplitz_apply(layer.filter, act[static_cast<std::size_t>(j - 1)], S);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] -= layer.bias[i];
      auto& h = act[static_cast<std::size_t>(j)];
      h.resize(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) h[i] = std::max(0.0, z[i]);
      pre[static_cast<std::size_t>(j - 1)] = std::move(z);
    }
    const auto& top_in = act[static_cast<std::size_t>(J)];
    double out = 0.0;
    for (int k = 0; k < model.m; ++k) {
      const double src = top_in[static_cast<std::size_t>(model.fc_source(k))];
      for (int i = 0; i < block; ++i) {
        const std::size_t t = static_cast<std::size_t>(k * block + i);
        out += model.c[t] * std::max(0.0, src - model.fc_bias[t]);
      }
    }
    const double g_out = scale * (out - data.ys[idx]);

    std::vector<double> g_h(top_in.size(), 0.0);
    for (int k = 0; k < model.m; ++k) {
      const std::size_t src_idx = static_cast<std::size_t>(model.fc_source(k));
      const double src = top_in[src_idx];
      for (int i = 0; i < block; ++i) {
        const std::size_t t = static_cast<std::size_t>(k * block + i);
        const double z = src - model.fc_bias[t];
        if (z > 0.0) {
          g_c[t] += g_out * z;
          const double gz = g_out * model.c[t];
          g_fc[t] -= gz;
          g_h[src_idx] += gz;
        }
      }
    }
    for (int j = J; j >= 1; --j) {
      const auto& layer = model.layers[static_cast<std::size_t>(j - 1)];
      const auto& z = pre[static_cast<std::size_t>(j - 1)];
      const auto& h_in = act[static_cast<std::size_t>(j - 1)];
      std::vector<double> gz(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) gz[i] = z[i] > 0.0 ? g_h[i] : 0.0;
      auto& gb = g_bias[static_cast<std::size_t>(j - 1)];
      for (std::size_t i = 0; i < gz.size(); ++i) gb[i] -= gz[i];
      auto& gw = g_filter[static_cast<std::size_t>(j - 1)];
      std::vector<double> g_in(h_in.size(), 0.0);
      for (std::size_t k = 0; k < h_in.size(); ++k) {
        for (int s = 0; s <= S; ++s) {
          const double gzs = gz[k + static_cast<std::size_t>(s)];
          gw[static_cast<std::size_t>(s)] += gzs * h_in[k];
          g_in[k] += layer.filter[s] * gzs;
        }
      }
      g_h = std::move(g_in);
    }
  }

  std::vector<double> grad;
  for (int j = 1; j <= J; ++j) {
    const auto& gw = g_filter[static_cast<std::size_t>(j - 1)];
    grad.insert(grad.end(), gw.begin(), gw.end());
    const auto& gb = g_bias[static_cast<std::size_t>(j - 1)];
    if (has_middle(model, j)) {
      const int w = model.width(j);
      for (int i = 0; i < S; ++i) grad.push_back(gb[static_cast<std::size_t>(i)]);
      double mid = 0.0;
      for (int i = S; i < w - S; ++i) mid += gb[static_cast<std::size_t>(i)];
      grad.push_back(mid);
      for (int i = w - S; i < w; ++i) grad.push_back(gb[static_cast<std::size_t>(i)]);
    } else {
      grad.insert(grad.end(), gb.begin(), gb.end());
    }
  }
  grad.insert(grad.end(), g_fc.begin(), g_fc.end());
  grad.insert(grad.end(), g_c.begin(), g_c.end());
  return grad;
}

ConvNetModel fit_full_gd(const ConvNetModel& init, const Dataset& data,
                         const GradientDescentOptions& options) {
  if (!(options.lr >= 0.0)) throw std::invalid_argument("fit_full_gd: lr must be >= 0");
  if (options.batch_size == 0) throw std::invalid_argument("fit_full_gd: batch_size must be >= 1");
  init.check_shapes();
  if (options.lr == 0.0 || options.epochs <= 0 || data.size() == 0) return init;

  const double initial_risk = empirical_risk(init, data);
  const double blowup = 10.0 * std::max(initial_risk, 1e-12);
  ConvNetModel best = init;
  double best_risk = initial_risk;

  std::vector<double> params = flatten_parameters(init);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(options.seed);

  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
    }
    for (std::size_t start = 0; start < order.size(); start += options.batch_size) {
      const std::size_t stop = std::min(order.size(), start + options.batch_size);
      const ConvNetModel current = unflatten_parameters(init, params);
      const auto grad = risk_gradient(
          current, data, std::span<const std::size_t>(order.data() + start, stop - start));
      for (std::size_t p = 0; p < params.size(); ++p) params[p] -= options.lr * grad[p];
    }
    ConvNetModel current = unflatten_parameters(init, params);
    const double risk = empirical_risk(current, data);
    if (!std::isfinite(risk) || risk > blowup) {
      std::ostringstream msg;
      msg << "fit_full_gd: diverged at epoch " << epoch << " (risk " << risk << ", initial "
          << initial_risk << ")";
      throw DivergenceError(msg.str(), epoch);
    }
    if (risk < best_risk) {
      best_risk = risk;
      best = std::move(current);
    }
  }
  return best;
}

MonteCarloEstimate l2_error_estimate(const ConvNetModel& model, const RidgeSpec& spec, int n_test,
                                     std::uint64_t seed, Clipping clipping) {
  if (n_test < 1) throw std::invalid_argument("l2_error: n_test must be >= 1");
  Rng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n_test; ++i) {
    const auto x = sample_unit_ball(rng, spec.d);
    double pred = forward(model, x);
    if (clipping == Clipping::On) pred = clip(pred, model.M);
    const double e = pred - spec(x);
    const double e2 = e * e;
    sum += e2;
    sum_sq += e2 * e2;
  }
  MonteCarloEstimate est;
  est.mean = sum / n_test;
  if (n_test > 1) {
    const double var = std::max(0.0, (sum_sq - n_test * est.mean * est.mean) / (n_test - 1));
    est.std_error = std::sqrt(var / n_test);
  }
  return est;
}

double l2_error(const ConvNetModel& model, const RidgeSpec& spec, int n_test, std::uint64_t seed,
                Clipping clipping) {
  return l2_error_estimate(model, spec, n_test, seed, clipping).mean;
}

int resolution_for(std::size_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("resolution_for: n must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("resolution_for: alpha must be positive");
  const double r = std::pow(static_cast<double>(n), 1.0 / (1.0 + 2.0 * alpha));
  double k = std::ceil(r);
  if (k > 1.0 && r - (k - 1.0) <= 1e-9 * r) k -= 1.0;
  return static_cast<int>(k);
}

int default_thread_count() {
  if (const char* env = std::getenv("RIDGEKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

RateExperimentResult rate_experiment(const ExperimentConfig& config) {
  if (config.sizes.empty()) throw std::invalid_argument("rate_experiment: no sample sizes");
  for (std::size_t i = 1; i < config.sizes.size(); ++i) {
    if (config.sizes[i] <= config.sizes[i - 1]) {
      throw std::invalid_argument("rate_experiment: sizes must be strictly increasing");
    }
  }
  if (config.trials < 1) throw std::invalid_argument("rate_experiment: trials must be >= 1");
  validate_ridge_spec(config.spec);

  std::vector<std::vector<double>> directions;
  for (const auto& comp : config.spec.components) directions.push_back(comp.xi);

  std::vector<RateRow> rows;
  for (std::size_t n : config.sizes) {
    for (int t = 0; t < config.trials; ++t) {
      RateRow row;
      row.n = n;
      row.trial = t;
      row.N = resolution_for(n, config.alpha);
      rows.push_back(row);
    }
  }

  auto run_one = [&](RateRow& row) {
    try {
      const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(row.trial);
      const Dataset data = sample_dataset(config.spec, row.n, config.noise_level, config.M, seed);
      const ConvNetModel model =
          fit_coefficients(directions, config.S, row.N, config.M, data, config.ridge_eps);
      row.mse = l2_error(model, config.spec, config.n_test, seed ^ 0x5deece66dULL);
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
      row.mse = std::numeric_limits<double>::quiet_NaN();
    }
  };

  const int threads = std::max(1, std::min<int>(config.threads, static_cast<int>(rows.size())));
  if (threads == 1) {
    for (auto& row : rows) run_one(row);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) run_one(rows[i]);
      });
    }
    for (auto& th : pool) th.join();
  }

  RateExperimentResult result;
  result.rows = std::move(rows);
  std::sort(result.rows.begin(), result.rows.end(), [](const RateRow& a, const RateRow& b) {
    return a.n != b.n ? a.n < b.n : a.trial < b.trial;
  });

  std::vector<double> log_n;
  std::vector<double> log_mse;
  bool degenerate = false;
  for (std::size_t n : config.sizes) {
    double sum = 0.0;
    int count = 0;
    std::string last_error;
    for (const auto& row : result.rows) {
      if (row.n != n) continue;
      if (row.ok) {
        sum += row.mse;
        ++count;
      } else {
        last_error = row.error;
      }
    }
    if (count == 0) {
      std::ostringstream msg;
      msg << "rate_experiment: every trial failed at n = " << n << ": " << last_error;
      throw NumericalError(msg.str());
    }
    const double mean = sum / count;
    if (!(mean > 1e-12)) degenerate = true;
    log_n.push_back(std::log(static_cast<double>(n)));
    log_mse.push_back(std::log(mean));
  }

  if (!degenerate && log_n.size() >= 2) {
    const double k = static_cast<double>(log_n.size());
    const double mx = std::accumulate(log_n.begin(), log_n.end(), 0.0) / k;
    const double my = std::accumulate(log_mse.begin(), log_mse.end(), 0.0) / k;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      sxx += (log_n[i] - mx) * (log_n[i] - mx);
      sxy += (log_n[i] - mx) * (log_mse[i] - my);
    }
    result.fitted_slope = sxy / sxx;
    if (log_n.size() > 2) {
      const double intercept = my - result.fitted_slope * mx;
      double ssr = 0.0;
      for (std::size_t i = 0; i < log_n.size(); ++i) {
        const double r = log_mse[i] - (intercept + result.fitted_slope * log_n[i]);
        ssr += r * r;
      }
      result.slope_stderr = std::sqrt(ssr / (k - 2.0) / sxx);
    }
    result.slope_fitted = true;
  }
  return result;
}

std::string rate_csv(const RateExperimentResult& result) {
  std::string out = "n,trial,mse\n";
  char buf[64];
  for (const auto& row : result.rows) {
    if (row.ok) {
      std::snprintf(buf, sizeof(buf), "%.10g", row.mse);
    } else {
      std::snprintf(buf, sizeof(buf), "nan");
    }
    out += std::to_string(row.n) + "," + std::to_string(row.trial) + "," + buf + "\n";
  }
  if (result.slope_fitted) {
    char line[128];
    std::snprintf(line, sizeof(line), "# slope=%.10g stderr=%.10g\n", result.fitted_slope,
                  result.slope_stderr);
    out += line;
  } else {
    out += "# slope=nan stderr=nan skipped=true\n";
  }
  return out;
}

}  // namespace ridgekit
