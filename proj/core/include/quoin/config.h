// Copyright 2026 The quoin-factory Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quoin/factory.h"
#include "quoin/quoin.h"

namespace quoin {

enum class Mode { simulate, classical, bounds, verify };
enum class OutputFormat { csv, json };

std::string_view to_string(Mode mode);
std::string_view to_string(OutputFormat format);

/// A rejected configuration. `field()` names the offending key (or "line N"
/// for syntax errors).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  Mode mode = Mode::simulate;
  /// Preparation angles in degrees.
  std::vector<double> theta_list = {0, 15, 30, 45, 60, 75, 90, 105, 120, 135, 150, 165};
  /// Quoins measured in each of the Z and X bases per angle, for p_hat and q_hat.
  std::uint64_t n_quoins = 1'000'000;
  /// Derived output bits per angle (simulate) or per bias (classical).
  std::uint64_t n_outputs = 100'000;
  std::uint64_t seed = 1;
  NoiseModel noise;
  PipelineOptions pipeline;
  /// Truncation gap of the classical q_t construction.
  double eps1 = 0.04;
  /// Half-gap of the classical f_t construction (f_t = min{4p(1-p), 1 - 2 eps1p}).
  double eps1p = 0.0175;
  /// Biases for classical mode.
  std::vector<double> p_list = {0.1, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.9};
  /// Bounds mode grid.
  std::vector<double> eps1p_list = {0.0175};
  std::vector<double> n_list = {1'000, 5'000, 10'000, 15'000, 19'000, 25'000, 50'000, 100'000};
  std::string output_path;
  OutputFormat output_format = OutputFormat::csv;
  /// Optional (x, y) curve file; empty disables it.
  std::string plot_path;
  /// Worker threads; 0 means one per hardware thread. Results do not depend on it.
  unsigned workers = 1;
};

/// Parses `key = value` lines; `#` starts a comment. Keys absent from the text
/// keep their defaults. Throws ConfigError on unknown keys, duplicate keys,
/// malformed values, and out-of-range probabilities.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Range checks shared by the parser and programmatic construction.
void validate(const ExperimentConfig& config);

/// Canonical `key = value` rendering; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ExperimentConfig& config);

}  // namespace quoin
