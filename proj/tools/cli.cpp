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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ridgekit/bounds.hpp"
#include "ridgekit/constructor.hpp"
#include "ridgekit/convnet.hpp"
#include "ridgekit/errors.hpp"
#include "ridgekit/estimator.hpp"
#include "ridgekit/json_io.hpp"
#include "ridgekit/minimax.hpp"
#include "ridgekit/polyfactor.hpp"

namespace ridgekit::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr int kUsageError = 1;
constexpr int kNumericalError = 2;

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_text_file_atomic(path, content);
  }
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw FormatError("x: '" + item + "' is not a number");
    }
    if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) {
      throw FormatError("x: '" + item + "' is not a number");
    }
    x.push_back(v);
  }
  if (x.empty()) throw FormatError("x: empty point");
  return x;
}

RidgeSpec load_spec(const fs::path& path) {
  RidgeSpec spec = spec_from_json(read_text_file(path));
  validate_ridge_spec(spec);
  return spec;
}

std::vector<std::vector<double>> directions_of(const RidgeSpec& spec) {
  std::vector<std::vector<double>> dirs;
  for (const auto& comp : spec.components) dirs.push_back(comp.xi);
  return dirs;
}

struct FactorizeArgs {
  std::string filter;
  int S = 2;
  std::string out;
};

int cmd_factorize(const FactorizeArgs& a, std::ostream& out, std::ostream& err) {
  const FilterSequence W = filter_from_json(read_text_file(a.filter));
  if (W.empty()) throw FormatError("W: filter is identically zero");
  const auto factors = factorize_filter(W, a.S);
  err << "factorize: " << factors.size() << " factors of degree <= " << a.S << "\n";
  emit(factors_to_json(W, a.S, factors), a.out, out);
  return 0;
}

struct BuildArgs {
  std::string spec;
  int S = 2;
  int N = 1;
  double M = 1.0;
  std::string out;
};

int cmd_build(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  const RidgeSpec spec = load_spec(a.spec);
  const BuiltNetwork built = build_network_report(spec, a.S, a.N, a.M);
  err << "build: J = " << built.model.depth() << ", factors = " << built.factor_count
      << ", offset = " << built.offset << ", certified bound = " << built.certified_bound << "\n";
  emit(model_to_json(built.model), a.out, out);
  return 0;
}

struct EvalArgs {
  std::string model;
  std::string x;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream&) {
  const ConvNetModel model = model_from_json(read_text_file(a.model));
  const auto x = parse_point(a.x);
  if (static_cast<int>(x.size()) != model.d) {
    throw FormatError("x: expected " + std::to_string(model.d) + " coordinates");
  }
  const double y = forward(model, x);
  Json j;
  j["prediction"] = y;
  j["clipped"] = clip(y, model.M);
  out << j.dump(2) << "\n";
  return 0;
}

struct ApproxArgs {
  std::string model;
  std::string spec;
  int probes = 4000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_approx(const ApproxArgs& a, std::ostream& out, std::ostream&) {
  const ConvNetModel model = model_from_json(read_text_file(a.model));
  const RidgeSpec spec = load_spec(a.spec);
  if (spec.d != model.d) throw FormatError("spec: field 'd' does not match the model");
  if (spec.m() != model.m) throw FormatError("spec: number of components does not match the model");
  if (a.probes < 1) throw FormatError("probes: must be >= 1");
  const double bound = certified_bound(spec, model.N);
  const double measured = sup_error(model, spec, a.probes, a.seed);
  Json j;
  j["N"] = model.N;
  j["certified_bound"] = bound;
  j["sup_error"] = measured;
  j["probes"] = a.probes;
  j["seed"] = a.seed;
  j["within_bound"] = measured <= bound;
  emit(j.dump(2) + "\n", a.out, out);
  return 0;
}

struct FitArgs {
  std::string config;
  std::string spec;
  long long n = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string method = "coef";
  int epochs = 10;
  double lr = 1e-3;
  std::size_t batch = 32;
  std::string out;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path cfg_path(a.config);
  const auto file = experiment_config_from_json(read_text_file(cfg_path), cfg_path.parent_path());
  const RidgeSpec spec = load_spec(a.spec.empty() ? file.spec_path : fs::path(a.spec));
  const ExperimentConfig& cfg = file.config;
  const std::size_t n = a.n > 0 ? static_cast<std::size_t>(a.n) : cfg.sizes.front();
  const std::uint64_t seed = a.seed_set ? a.seed : cfg.base_seed;
  const int N = resolution_for(n, cfg.alpha);

  const Dataset data = sample_dataset(spec, n, cfg.noise_level, cfg.M, seed);
  ConvNetModel model = fit_coefficients(directions_of(spec), cfg.S, N, cfg.M, data, cfg.ridge_eps);
  if (a.method == "gd") {
    GradientDescentOptions opts;
    opts.lr = a.lr;
    opts.epochs = a.epochs;
    opts.batch_size = a.batch;
    opts.seed = seed;
    model = fit_full_gd(model, data, opts);
  }
  const double risk = empirical_risk(model, data);
  const auto l2 = l2_error_estimate(model, spec, cfg.n_test, seed ^ 0x5deece66dULL);
  err << "fit: n = " << n << ", N = " << N << ", method = " << a.method << "\n";
  if (!a.out.empty()) write_text_file_atomic(a.out, model_to_json(model));
  Json j;
  j["n"] = n;
  j["N"] = N;
  j["method"] = a.method;
  j["seed"] = seed;
  j["empirical_risk"] = risk;
  j["l2_error"] = l2.mean;
  j["l2_std_error"] = l2.std_error;
  if (a.out.empty()) j["model"] = Json::parse(model_to_json(model));
  out << j.dump(2) << "\n";
  return 0;
}

struct RateArgs {
  std::string config;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
};

int cmd_rate(const RateArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path cfg_path(a.config);
  auto file = experiment_config_from_json(read_text_file(cfg_path), cfg_path.parent_path());
  file.config.spec = load_spec(file.spec_path);
  if (a.seed_set) file.config.base_seed = a.seed;
  file.config.threads = a.threads > 0 ? a.threads : default_thread_count();
  const RateExperimentResult result = rate_experiment(file.config);
  for (const auto& row : result.rows) {
    if (!row.ok) err << "rate: n = " << row.n << " trial " << row.trial << " failed: " << row.error << "\n";
  }
  std::string path = a.out;
  if (path.empty() && !file.out_path.empty()) path = file.out_path.string();
  emit(rate_csv(result), path, out);
  if (!path.empty()) {
    err << "rate: slope = " << result.fitted_slope << " (stderr " << result.slope_stderr << ")\n";
  }
  return 0;
}

struct MinimaxArgs {
  int N_hat = 16;
  double alpha = 1.0;
  double G = 1.0;
  double L = 1.0;
  std::uint64_t seed = 0;
  int quadrature = 20000;
  int max_pairs = 64;
  std::string out;
};

int cmd_minimax(const MinimaxArgs& a, std::ostream& out, std::ostream& err) {
  if (a.quadrature < 2) throw FormatError("quadrature: must be >= 2");
  const VgCode code = vg_code(a.N_hat, a.seed);
  const PackingFamily family = make_family(a.N_hat, a.alpha, a.G, a.L, code.codewords);
  const double K_sq = bump_norm_sq(a.alpha, a.G, a.L);
  const double T = two_point_level(1, a.G);
  const double separation_target =
      0.25 * std::pow(static_cast<double>(a.N_hat), -2.0 * a.alpha) * K_sq;

  const std::size_t checked =
      std::min<std::size_t>(family.codewords.size(), static_cast<std::size_t>(a.max_pairs));
  double min_sep = std::numeric_limits<double>::infinity();
  double max_kl_gap = -std::numeric_limits<double>::infinity();
  double max_mass_error = 0.0;
  long long pairs = 0;
  for (std::size_t i = 0; i < checked; ++i) {
    const auto& wi = family.codewords[i];
    auto fi = [&](double u) { return phi_omega(wi, family, u); };
    for (std::size_t j = i + 1; j < checked; ++j) {
      const auto& wj = family.codewords[j];
      auto fj = [&](double u) { return phi_omega(wj, family, u); };
      min_sep = std::min(min_sep, packing_distance_sq(wi, wj, family, a.quadrature));
      const KlResult kl = kl_two_point(fi, fj, T, a.quadrature);
      max_kl_gap = std::max(max_kl_gap, kl.kl - kl.bound);
      ++pairs;
    }
    for (int k = 0; k <= 200; ++k) {
      const TwoPointMasses p = two_point_masses(fi(-1.0 + k / 100.0), T);
      max_mass_error = std::max(max_mass_error, std::abs(p.plus + p.minus - 1.0));
    }
  }

  Json v;
  v["codewords"] = code.codewords.size();
  v["target_count"] = code.target_count;
  v["min_hamming"] = code.min_distance;
  v["target_distance"] = code.target_distance;
  v["complete"] = code.complete;
  v["K_norm_sq"] = K_sq;
  v["T"] = T;
  v["c_tau"] = c_tau(0.5, T, K_sq);
  v["pairs_checked"] = pairs;
  v["min_separation"] = finite_or_null(min_sep);
  v["separation_target"] = separation_target;
  v["separation_ok"] = pairs == 0 || min_sep >= separation_target * (1.0 - 1e-3);
  v["max_kl_minus_bound"] = finite_or_null(max_kl_gap);
  v["kl_ok"] = pairs == 0 || max_kl_gap <= 1e-6;
  v["max_mass_error"] = max_mass_error;

  Json report;
  report["verification"] = v;
  if (a.out.empty()) {
    report["packing"] = Json::parse(packing_to_json(family));
  } else {
    write_text_file_atomic(a.out, packing_to_json(family));
  }
  out << report.dump(2) << "\n";
  if (!code.complete) {
    err << "minimax: found " << code.codewords.size() << " codewords, needed "
        << code.target_count << "\n";
    return kNumericalError;
  }
  return 0;
}

struct BoundsArgs {
  BoundsQuery q;
  double B = 0.0;
  double alpha = 0.0;
  double n = 0.0;
  std::string out;
};

int cmd_bounds(BoundsArgs a, std::ostream& out, std::ostream&) {
  if (a.B > 0.0) a.q.B = a.B;
  if ((a.alpha > 0.0) != (a.n > 0.0)) throw FormatError("alpha and n must be given together");
  if (a.alpha > 0.0) {
    a.q.alpha = a.alpha;
    a.q.n = a.n;
  }
  emit(bound_report_to_json(bound_report(a.q)), a.out, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deep convolutional approximation and regression of additive ridge functions",
               "ridgekit"};
  app.require_subcommand(1);

  FactorizeArgs fa;
  auto* factorize = app.add_subcommand("factorize", "Factor a filter into filters of length S+1");
  factorize->add_option("--filter", fa.filter, "Filter JSON file")->required();
  factorize->add_option("--S", fa.S, "Maximum factor degree")->required()->check(CLI::Range(2, 1 << 20));
  factorize->add_option("--out", fa.out, "Output file (default: standard output)");

  BuildArgs ba;
  auto* build = app.add_subcommand("build", "Construct a network from a spec file");
  build->add_option("--spec", ba.spec, "Spec JSON file")->required();
  build->add_option("--S", ba.S, "Filter length parameter")->required();
  build->add_option("--N", ba.N, "Spline resolution")->required()->check(CLI::PositiveNumber);
  build->add_option("--M", ba.M, "Clipping level")->check(CLI::PositiveNumber);
  build->add_option("--out", ba.out, "Output model file (default: standard output)");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate a model at one point");
  eval->add_option("--model", ea.model, "Model JSON file")->required();
  eval->add_option("--x", ea.x, "Comma-separated coordinates")->required();

  ApproxArgs aa;
  auto* approx = app.add_subcommand("approx", "Certified bound and measured sup error");
  approx->add_option("--model", aa.model, "Model JSON file")->required();
  approx->add_option("--spec", aa.spec, "Spec JSON file")->required();
  approx->add_option("--probes", aa.probes, "Number of probe points");
  approx->add_option("--seed", aa.seed, "Probe seed");
  approx->add_option("--out", aa.out, "Output file (default: standard output)");

  FitArgs fi;
  auto* fit = app.add_subcommand("fit", "Fit a model to simulated data");
  fit->add_option("--config", fi.config, "Experiment config JSON file")->required();
  fit->add_option("--spec", fi.spec, "Spec JSON file (default: the config's spec_path)");
  fit->add_option("--n", fi.n, "Sample size (default: first configured size)")->check(CLI::PositiveNumber);
  auto* fit_seed = fit->add_option("--seed", fi.seed, "Data seed (default: base_seed)");
  fit->add_option("--method", fi.method, "coef or gd")->check(CLI::IsMember({"coef", "gd"}));
  fit->add_option("--epochs", fi.epochs, "Gradient descent epochs")->check(CLI::NonNegativeNumber);
  fit->add_option("--lr", fi.lr, "Gradient descent step size")->check(CLI::NonNegativeNumber);
  fit->add_option("--batch", fi.batch, "Gradient descent batch size")->check(CLI::PositiveNumber);
  fit->add_option("--out", fi.out, "Output model file");

  RateArgs ra;
  auto* rate = app.add_subcommand("rate", "Learning-rate experiment");
  rate->add_option("--config", ra.config, "Experiment config JSON file")->required();
  rate->add_option("--threads", ra.threads, "Worker threads (default: RIDGEKIT_THREADS or cores)")
      ->check(CLI::NonNegativeNumber);
  auto* rate_seed = rate->add_option("--seed", ra.seed, "Base seed (default: from config)");
  rate->add_option("--out", ra.out, "Output CSV (default: config out_path or standard output)");

  MinimaxArgs ma;
  auto* minimax = app.add_subcommand("minimax", "Packing family with verification report");
  minimax->add_option("--N-hat", ma.N_hat, "Number of cells")->required()->check(CLI::Range(8, 96));
  minimax->add_option("--alpha", ma.alpha, "Smoothness exponent")->required();
  minimax->add_option("--G", ma.G, "Sup bound")->required()->check(CLI::PositiveNumber);
  minimax->add_option("--L", ma.L, "Lipschitz constant")->required()->check(CLI::PositiveNumber);
  minimax->add_option("--seed", ma.seed, "Search seed");
  minimax->add_option("--quadrature", ma.quadrature, "Quadrature panels");
  minimax->add_option("--max-pairs", ma.max_pairs, "Codewords used in the pairwise checks")
      ->check(CLI::NonNegativeNumber);
  minimax->add_option("--out", ma.out, "Output packing file");

  BoundsArgs bo;
  auto* bounds = app.add_subcommand("bounds", "Bound report");
  bounds->add_option("--S", bo.q.S, "Filter length parameter")->required();
  bounds->add_option("--d", bo.q.d, "Input dimension")->required();
  bounds->add_option("--m", bo.q.m, "Number of ridge components")->required();
  bounds->add_option("--N", bo.q.N, "Spline resolution")->required();
  bounds->add_option("--B", bo.B, "Filter magnitude bound")->check(CLI::PositiveNumber);
  bounds->add_option("--alpha", bo.alpha, "Smoothness exponent for rate entries");
  bounds->add_option("--n", bo.n, "Sample size for rate entries");
  bounds->add_option("--out", bo.out, "Output file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*factorize) return cmd_factorize(fa, out, err);
    if (*build) return cmd_build(ba, out, err);
    if (*eval) return cmd_eval(ea, out, err);
    if (*approx) return cmd_approx(aa, out, err);
    if (*fit) {
      fi.seed_set = fit_seed->count() > 0;
      return cmd_fit(fi, out, err);
    }
    if (*rate) {
      ra.seed_set = rate_seed->count() > 0;
      return cmd_rate(ra, out, err);
    }
    if (*minimax) return cmd_minimax(ma, out, err);
    if (*bounds) return cmd_bounds(bo, out, err);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  err << "error: no subcommand\n";
  return kUsageError;
}

}  // namespace ridgekit::cli
