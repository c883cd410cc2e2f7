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

#include "quoin/config.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace quoin {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
    throw ConfigError(std::string(key), fmt::format("'{}' is not a finite number", value));
  }
  return out;
}

std::uint64_t parse_count(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  if (const auto [ptr, ec] = std::from_chars(value.data(), end, out); ec == std::errc{} && ptr == end) {
    return out;
  }
  // Accept integral scientific notation such as 1e6.
  const double d = parse_double(key, value);
  if (d < 0 || d != std::floor(d) || d > 0x1.0p63) {
    throw ConfigError(std::string(key), fmt::format("'{}' is not a non-negative integer", value));
  }
  return static_cast<std::uint64_t>(d);
}

bool parse_bool(std::string_view key, std::string_view value) {
  static const std::set<std::string_view> yes = {"true", "1", "yes", "on"};
  static const std::set<std::string_view> no = {"false", "0", "no", "off"};
  if (yes.contains(value)) {
    return true;
  }
  if (no.contains(value)) {
    return false;
  }
  throw ConfigError(std::string(key), fmt::format("'{}' is not a boolean", value));
}

std::vector<double> parse_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (item.empty()) {
      throw ConfigError(std::string(key), "empty list element");
    }
    out.push_back(parse_double(key, item));
    value = comma == std::string_view::npos ? std::string_view{} : value.substr(comma + 1);
  }
  return out;
}

void require_probability(std::string_view key, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ConfigError(std::string(key), fmt::format("{} is not a probability in [0, 1]", value));
  }
}

void require_open(std::string_view key, double value, double lo, double hi) {
  if (!(value > lo && value < hi)) {
    throw ConfigError(std::string(key), fmt::format("{} must lie in ({}, {})", value, lo, hi));
  }
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string_view, Setter>& setters() {
  static const std::map<std::string_view, Setter> table = {
      {"mode",
       [](ExperimentConfig& c, std::string_view v) {
         static const std::map<std::string_view, Mode> modes = {
             {"simulate", Mode::simulate}, {"classical", Mode::classical}, {"bounds", Mode::bounds},
             {"verify", Mode::verify}};
         const auto it = modes.find(v);
         if (it == modes.end()) {
           throw ConfigError("mode", fmt::format("unknown mode '{}'", v));
         }
         c.mode = it->second;
       }},
      {"theta_list", [](ExperimentConfig& c, std::string_view v) { c.theta_list = parse_list("theta_list", v); }},
      {"n_quoins", [](ExperimentConfig& c, std::string_view v) { c.n_quoins = parse_count("n_quoins", v); }},
      {"n_outputs", [](ExperimentConfig& c, std::string_view v) { c.n_outputs = parse_count("n_outputs", v); }},
      {"seed", [](ExperimentConfig& c, std::string_view v) { c.seed = parse_count("seed", v); }},
      {"steady_excited",
       [](ExperimentConfig& c, std::string_view v) { c.noise.steady_excited = parse_double("steady_excited", v); }},
      {"purify_residual",
       [](ExperimentConfig& c, std::string_view v) { c.noise.purify_residual = parse_double("purify_residual", v); }},
      {"gate_error", [](ExperimentConfig& c, std::string_view v) { c.noise.gate_error = parse_double("gate_error", v); }},
      {"readout_f0", [](ExperimentConfig& c, std::string_view v) { c.noise.readout_f0 = parse_double("readout_f0", v); }},
      {"readout_f1", [](ExperimentConfig& c, std::string_view v) { c.noise.readout_f1 = parse_double("readout_f1", v); }},
      {"purification_enabled",
       [](ExperimentConfig& c, std::string_view v) {
         c.noise.purification_enabled = parse_bool("purification_enabled", v);
       }},
      {"max_rounds",
       [](ExperimentConfig& c, std::string_view v) { c.pipeline.max_rounds = parse_count("max_rounds", v); }},
      {"max_draws", [](ExperimentConfig& c, std::string_view v) { c.pipeline.max_draws = parse_count("max_draws", v); }},
      {"lazy_toss", [](ExperimentConfig& c, std::string_view v) { c.pipeline.lazy_toss = parse_bool("lazy_toss", v); }},
      {"free_fair_bits",
       [](ExperimentConfig& c, std::string_view v) { c.pipeline.free_fair_bits = parse_bool("free_fair_bits", v); }},
      {"eps1", [](ExperimentConfig& c, std::string_view v) { c.eps1 = parse_double("eps1", v); }},
      {"eps1p", [](ExperimentConfig& c, std::string_view v) { c.eps1p = parse_double("eps1p", v); }},
      {"p_list", [](ExperimentConfig& c, std::string_view v) { c.p_list = parse_list("p_list", v); }},
      {"eps1p_list", [](ExperimentConfig& c, std::string_view v) { c.eps1p_list = parse_list("eps1p_list", v); }},
      {"n_list", [](ExperimentConfig& c, std::string_view v) { c.n_list = parse_list("n_list", v); }},
      {"output_path", [](ExperimentConfig& c, std::string_view v) { c.output_path = std::string(v); }},
      {"output_format",
       [](ExperimentConfig& c, std::string_view v) {
         if (v == "csv") {
           c.output_format = OutputFormat::csv;
         } else if (v == "json") {
           c.output_format = OutputFormat::json;
         } else {
           throw ConfigError("output_format", fmt::format("'{}' is neither csv nor json", v));
         }
       }},
      {"plot_path", [](ExperimentConfig& c, std::string_view v) { c.plot_path = std::string(v); }},
      {"workers",
       [](ExperimentConfig& c, std::string_view v) {
         const auto n = parse_count("workers", v);
         if (n > 1024) {
           throw ConfigError("workers", fmt::format("{} workers is more than 1024", n));
         }
         c.workers = static_cast<unsigned>(n);
       }},
  };
  return table;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::simulate:
      return "simulate";
    case Mode::classical:
      return "classical";
    case Mode::bounds:
      return "bounds";
    case Mode::verify:
      return "verify";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

void validate(const ExperimentConfig& c) {
  require_probability("steady_excited", c.noise.steady_excited);
  require_probability("purify_residual", c.noise.purify_residual);
  require_probability("gate_error", c.noise.gate_error);
  require_probability("readout_f0", c.noise.readout_f0);
  require_probability("readout_f1", c.noise.readout_f1);
  for (double theta : c.theta_list) {
    if (!(theta >= 0.0 && theta <= 180.0)) {
      throw ConfigError("theta_list", fmt::format("{} degrees is outside [0, 180]", theta));
    }
  }
  for (double p : c.p_list) {
    require_probability("p_list", p);
  }
  require_open("eps1", c.eps1, 0.0, 0.5);
  require_open("eps1p", c.eps1p, 0.0, 0.25);
  for (double e : c.eps1p_list) {
    require_open("eps1p_list", e, 0.0, 0.25);
  }
  for (double n : c.n_list) {
    if (!(n >= 1.0)) {
      throw ConfigError("n_list", fmt::format("coin budget {} is below 1", n));
    }
  }
  if (c.pipeline.max_rounds == 0) {
    throw ConfigError("max_rounds", "must be at least 1");
  }
  if (c.pipeline.max_draws == 0) {
    throw ConfigError("max_draws", "must be at least 1");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto newline = text.find('\n');
    auto line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}", line_no), "expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError(std::string(key), "unknown key");
    }
    if (!seen.emplace(key).second) {
      throw ConfigError(std::string(key), "given more than once");
    }
    it->second(config, value);
  }
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("config", fmt::format("cannot read '{}'", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_config_text(const ExperimentConfig& c) {
  std::string out;
  const auto line = [&out](std::string_view key, const auto& value) { out += fmt::format("{} = {}\n", key, value); };
  const auto list = [](const std::vector<double>& v) { return fmt::format("{}", fmt::join(v, ", ")); };
  line("mode", to_string(c.mode));
  line("theta_list", list(c.theta_list));
  line("n_quoins", c.n_quoins);
  line("n_outputs", c.n_outputs);
  line("seed", c.seed);
  line("steady_excited", c.noise.steady_excited);
  line("purify_residual", c.noise.purify_residual);
  line("gate_error", c.noise.gate_error);
  line("readout_f0", c.noise.readout_f0);
  line("readout_f1", c.noise.readout_f1);
  line("purification_enabled", c.noise.purification_enabled);
  line("max_rounds", c.pipeline.max_rounds);
  line("max_draws", c.pipeline.max_draws);
  line("lazy_toss", c.pipeline.lazy_toss);
  line("free_fair_bits", c.pipeline.free_fair_bits);
  line("eps1", c.eps1);
  line("eps1p", c.eps1p);
  line("p_list", list(c.p_list));
  line("eps1p_list", list(c.eps1p_list));
  line("n_list", list(c.n_list));
  if (!c.output_path.empty()) {
    line("output_path", c.output_path);
  }
  line("output_format", to_string(c.output_format));
  if (!c.plot_path.empty()) {
    line("plot_path", c.plot_path);
  }
  line("workers", c.workers);
  return out;
}

}  // namespace quoin
