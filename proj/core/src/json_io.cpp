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

#include "ridgekit/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace ridgekit {

namespace {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

const Json& field(const Json& obj, const std::string& name, const std::string& ctx) {
  if (!obj.is_object()) throw FormatError(ctx + ": expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw FormatError(ctx + ": missing field '" + name + "'");
  return *it;
}

double number(const Json& v, const std::string& name) {
  if (!v.is_number()) throw FormatError("field '" + name + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError("field '" + name + "' must be finite");
  return x;
}

long long integer(const Json& v, const std::string& name) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x)) return static_cast<long long>(x);
  }
  throw FormatError("field '" + name + "' must be an integer");
}

int int_field(const Json& obj, const std::string& name, const std::string& ctx) {
  return static_cast<int>(integer(field(obj, name, ctx), name));
}

double num_field(const Json& obj, const std::string& name, const std::string& ctx) {
  return number(field(obj, name, ctx), name);
}

std::vector<double> number_array(const Json& v, const std::string& name) {
  if (!v.is_array()) throw FormatError("field '" + name + "' must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], name + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json univariate_to_json(const Univariate& g) {
  if (g.kind() == Univariate::Kind::Custom) {
    throw std::invalid_argument("custom univariate components cannot be serialized");
  }
  Json out;
  out["kind"] = g.kind_name();
  out["params"] = g.params();
  return out;
}

Univariate univariate_from_json(const Json& v, const std::string& ctx) {
  const Json& kind_v = field(v, "kind", ctx);
  if (!kind_v.is_string()) throw FormatError(ctx + ": field 'kind' must be a string");
  const std::string kind = kind_v.get<std::string>();
  const auto params = number_array(field(v, "params", ctx), ctx + ".params");
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw FormatError(ctx + ".params: kind '" + kind + "' takes " + std::to_string(n) +
                        " values");
    }
  };
  if (kind == "abs") {
    need(2);
    return Univariate::abs(params[0], params[1]);
  }
  if (kind == "sin") {
    need(3);
    return Univariate::sine(params[0], params[1], params[2]);
  }
  if (kind == "poly") {
    if (params.empty()) throw FormatError(ctx + ".params: poly needs at least one coefficient");
    return Univariate::poly(params);
  }
  if (kind == "power") {
    need(3);
    if (!(params[2] > 0.0)) throw FormatError(ctx + ".params: power exponent must be positive");
    return Univariate::power(params[0], params[1], params[2]);
  }
  if (kind == "table") {
    if (params.size() < 3 || params.size() % 2 == 0) {
      throw FormatError(ctx + ".params: table needs 2N+1 node values with N >= 1");
    }
    return Univariate::table(params);
  }
  throw FormatError(ctx + ": unknown kind '" + kind + "'");
}

}  // namespace

std::string model_to_json(const ConvNetModel& model) {
  Json out;
  out["version"] = 1;
  out["d"] = model.d;
  out["S"] = model.S;
  out["J"] = model.depth();
  out["m"] = model.m;
  out["N"] = model.N;
  out["M"] = model.M;
  Json filters = Json::array();
  Json biases = Json::array();
  for (const auto& layer : model.layers) {
    std::vector<double> taps(static_cast<std::size_t>(model.S + 1));
    for (int s = 0; s <= model.S; ++s) taps[static_cast<std::size_t>(s)] = layer.filter[s];
    filters.push_back(taps);
    biases.push_back(layer.bias);
  }
  out["filters"] = filters;
  out["biases"] = biases;
  out["fc_bias"] = model.fc_bias;
  out["c"] = model.c;
  return dump(out);
}

ConvNetModel model_from_json(const std::string& text) {
  const Json j = parse(text, "model");
  const std::string ctx = "model";
  if (int_field(j, "version", ctx) != 1) throw FormatError("model: unsupported 'version'");
  ConvNetModel model;
  model.d = int_field(j, "d", ctx);
  model.S = int_field(j, "S", ctx);
  model.m = int_field(j, "m", ctx);
  model.N = int_field(j, "N", ctx);
  model.M = num_field(j, "M", ctx);
  const int J = int_field(j, "J", ctx);
  const Json& filters = field(j, "filters", ctx);
  const Json& biases = field(j, "biases", ctx);
  if (!filters.is_array() || static_cast<int>(filters.size()) != J) {
    throw FormatError("model: field 'filters' must hold J arrays");
  }
  if (!biases.is_array() || static_cast<int>(biases.size()) != J) {
    throw FormatError("model: field 'biases' must hold J arrays");
  }
  for (int l = 0; l < J; ++l) {
    const std::string idx = "[" + std::to_string(l) + "]";
    auto taps = number_array(filters[static_cast<std::size_t>(l)], "filters" + idx);
    if (static_cast<int>(taps.size()) > model.S + 1) {
      throw FormatError("model: field 'filters" + idx + "' has more than S+1 taps");
    }
    model.layers.push_back({FilterSequence(std::move(taps)),
                            number_array(biases[static_cast<std::size_t>(l)], "biases" + idx)});
  }
  model.fc_bias = number_array(field(j, "fc_bias", ctx), "fc_bias");
  model.c = number_array(field(j, "c", ctx), "c");
  try {
    model.check_shapes();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return model;
}

std::string spec_to_json(const RidgeSpec& spec) {
  Json out;
  out["m"] = spec.m();
  out["d"] = spec.d;
  Json comps = Json::array();
  for (const auto& comp : spec.components) {
    Json c;
    c["xi"] = comp.xi;
    c["g"] = univariate_to_json(comp.g);
    c["alpha"] = comp.alpha;
    c["L"] = comp.L;
    c["G"] = comp.G;
    comps.push_back(c);
  }
  out["components"] = comps;
  return dump(out);
}

RidgeSpec spec_from_json(const std::string& text) {
  const Json j = parse(text, "spec");
  RidgeSpec spec;
  spec.d = int_field(j, "d", "spec");
  const Json& comps = field(j, "components", "spec");
  if (!comps.is_array()) throw FormatError("spec: field 'components' must be an array");
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const std::string ctx = "components[" + std::to_string(k) + "]";
    const Json& c = comps[k];
    RidgeComponent comp;
    comp.xi = number_array(field(c, "xi", ctx), ctx + ".xi");
    if (static_cast<int>(comp.xi.size()) != spec.d) {
      throw FormatError(ctx + ".xi: expected " + std::to_string(spec.d) + " entries");
    }
    comp.g = univariate_from_json(field(c, "g", ctx), ctx + ".g");
    comp.alpha = num_field(c, "alpha", ctx);
    comp.L = num_field(c, "L", ctx);
    comp.G = num_field(c, "G", ctx);
    spec.components.push_back(std::move(comp));
  }
  if (j.contains("m") && int_field(j, "m", "spec") != spec.m()) {
    throw FormatError("spec: field 'm' does not match the number of components");
  }
  return spec;
}

FilterSequence filter_from_json(const std::string& text) {
  const Json j = parse(text, "filter");
  if (j.is_array()) return FilterSequence(number_array(j, "W"));
  return FilterSequence(number_array(field(j, "W", "filter"), "W"));
}

std::string factors_to_json(const FilterSequence& W, int S,
                            const std::vector<FilterSequence>& factors) {
  Json out;
  out["S"] = S;
  out["W"] = std::vector<double>(W.coeffs().begin(), W.coeffs().end());
  out["count"] = factors.size();
  Json fs = Json::array();
  for (const auto& f : factors) fs.push_back(std::vector<double>(f.coeffs().begin(), f.coeffs().end()));
  out["factors"] = fs;
  const FilterSequence product = convolve_all(factors);
  double err = 0.0;
  const std::ptrdiff_t len =
      static_cast<std::ptrdiff_t>(std::max(product.size(), W.size()));
  for (std::ptrdiff_t i = 0; i < len; ++i) err = std::max(err, std::abs(product[i] - W[i]));
  out["max_abs_error"] = err;
  out["relative_error"] = W.sup_norm() > 0.0 ? err / W.sup_norm() : err;
  return dump(out);
}

std::string packing_to_json(const PackingFamily& family) {
  Json out;
  out["N_hat"] = family.N_hat;
  out["alpha"] = family.alpha;
  out["G"] = family.G;
  out["L"] = family.L;
  out["codewords"] = family.codewords;
  out["centers"] = family.centers;
  return dump(out);
}

PackingFamily packing_from_json(const std::string& text) {
  const Json j = parse(text, "packing");
  const std::string ctx = "packing";
  const Json& words = field(j, "codewords", ctx);
  if (!words.is_array()) throw FormatError("packing: field 'codewords' must be an array");
  std::vector<std::string> codewords;
  for (const auto& w : words) {
    if (!w.is_string()) throw FormatError("packing: field 'codewords' must hold strings");
    codewords.push_back(w.get<std::string>());
  }
  try {
    return make_family(int_field(j, "N_hat", ctx), num_field(j, "alpha", ctx),
                       num_field(j, "G", ctx), num_field(j, "L", ctx), std::move(codewords));
  } catch (const FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("packing: ") + e.what());
  }
}

std::string bound_report_to_json(const BoundReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json item;
    item["name"] = e.name;
    item["formula_id"] = e.formula_id;
    item["value"] = e.overflow ? Json(nullptr) : finite_or_null(e.value);
    item["log_value"] = finite_or_null(e.log_value);
    item["overflow"] = e.overflow;
    entries.push_back(item);
  }
  Json out;
  out["entries"] = entries;
  return dump(out);
}

ExperimentConfigFile experiment_config_from_json(const std::string& text,
                                                 const std::filesystem::path& base_dir) {
  const Json j = parse(text, "config");
  const std::string ctx = "config";
  ExperimentConfigFile file;
  auto& cfg = file.config;

  const Json& spec_path = field(j, "spec_path", ctx);
  if (!spec_path.is_string()) throw FormatError("config: field 'spec_path' must be a string");
  file.spec_path = base_dir / spec_path.get<std::string>();

  const Json& sizes = field(j, "sizes", ctx);
  if (!sizes.is_array() || sizes.empty()) {
    throw FormatError("config: field 'sizes' must be a nonempty array");
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const long long n = integer(sizes[i], "sizes[" + std::to_string(i) + "]");
    if (n < 1) throw FormatError("config: field 'sizes' must hold positive integers");
    if (!cfg.sizes.empty() && static_cast<std::size_t>(n) <= cfg.sizes.back()) {
      throw FormatError("config: field 'sizes' must be strictly increasing");
    }
    cfg.sizes.push_back(static_cast<std::size_t>(n));
  }
  cfg.trials = int_field(j, "trials", ctx);
  if (cfg.trials < 1) throw FormatError("config: field 'trials' must be >= 1");
  cfg.alpha = num_field(j, "alpha", ctx);
  cfg.noise_level = num_field(j, "noise_level", ctx);
  const long long seed = integer(field(j, "base_seed", ctx), "base_seed");
  if (seed < 0) throw FormatError("config: field 'base_seed' must be nonnegative");
  cfg.base_seed = static_cast<std::uint64_t>(seed);
  cfg.M = num_field(j, "M", ctx);
  cfg.S = int_field(j, "S", ctx);
  if (j.contains("ridge_eps")) cfg.ridge_eps = num_field(j, "ridge_eps", ctx);
  if (j.contains("n_test")) cfg.n_test = int_field(j, "n_test", ctx);
  if (j.contains("out_path")) {
    const Json& out = j["out_path"];
    if (!out.is_string()) throw FormatError("config: field 'out_path' must be a string");
    file.out_path = base_dir / out.get<std::string>();
  }
  return file;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into '" + path.string() + "'");
  }
}

}  // namespace ridgekit
