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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "ridgekit/bounds.hpp"
#include "ridgekit/convnet.hpp"
#include "ridgekit/estimator.hpp"
#include "ridgekit/minimax.hpp"
#include "ridgekit/polyfactor.hpp"
#include "ridgekit/ridge.hpp"

namespace ridgekit {

/// Malformed input file. The message names the offending field.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Model file:
///   {"version": 1, "d", "S", "J", "m", "N", "M",
///    "filters": [[w_0..w_S], ...], "biases": [[...], ...],
///    "fc_bias": [...], "c": [...]}
/// Doubles are written in shortest round-trip form, so reading a written
/// model gives back bit-identical parameters.
std::string model_to_json(const ConvNetModel& model);
ConvNetModel model_from_json(const std::string& text);

/// Spec file:
///   {"d": 4, "components": [{"xi": [...], "g": {"kind": "abs", "params": [...]},
///    "alpha": 1, "L": 1, "G": 1}]}
/// Kinds: abs [scale, shift], sin [amp, freq, phase], poly [c0, c1, ...],
/// power [scale, shift, exponent], table [node values]. Custom components
/// cannot be written.
std::string spec_to_json(const RidgeSpec& spec);
RidgeSpec spec_from_json(const std::string& text);

/// Filter file: a JSON array of coefficients W_0..W_K, or {"W": [...]}.
FilterSequence filter_from_json(const std::string& text);
std::string factors_to_json(const FilterSequence& W, int S, const std::vector<FilterSequence>& factors);

std::string packing_to_json(const PackingFamily& family);
PackingFamily packing_from_json(const std::string& text);

/// {"entries": [{"name", "formula_id", "value", "log_value", "overflow"}]};
/// overflowed or undefined values are written as null.
std::string bound_report_to_json(const BoundReport& report);

/// Experiment config file:
///   {"spec_path", "sizes", "trials", "alpha", "noise_level", "base_seed",
///    "M", "S", "ridge_eps"?, "n_test"?, "out_path"?}
/// spec_path is resolved against the config file's directory.
struct ExperimentConfigFile {
  ExperimentConfig config;
  std::filesystem::path spec_path;
  std::filesystem::path out_path;  // empty when absent
};
ExperimentConfigFile experiment_config_from_json(const std::string& text,
                                                 const std::filesystem::path& base_dir);

std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary file in the same directory and renames it into
/// place, so a failed write leaves no partial file.
void write_text_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace ridgekit
