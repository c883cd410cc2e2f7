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

// quoin-factory: run protocol simulations, classical constructions, tail-bound
// tables, or the acceptance suite from a flat key = value config file.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "quoin/acceptance.h"
#include "quoin/config.h"
#include "quoin/report.h"
#include "quoin/runner.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;

// Destination for the report: the configured path, or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) {
        throw quoin::ConfigError("output_path", "cannot open '" + path + "' for writing");
      }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

template <class Report>
void emit(const quoin::ExperimentConfig& config, const Report& report) {
  Sink sink(config.output_path);
  if (config.output_format == quoin::OutputFormat::csv) {
    quoin::write_csv(sink.stream(), report);
  } else {
    quoin::write_json(sink.stream(), report);
  }
  if (!config.plot_path.empty()) {
    std::ofstream plot(config.plot_path, std::ios::binary);
    if (!plot) {
      throw quoin::ConfigError("plot_path", "cannot open '" + config.plot_path + "' for writing");
    }
    quoin::write_plot(plot, report);
  }
}

void warn(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) {
    std::cerr << "warning: " << w << '\n';
  }
}

int verify(const quoin::ExperimentConfig& config) {
  const auto results = quoin::run_acceptance({config.seed, config.workers});
  Sink sink(config.output_path);
  bool all = true;
  if (config.output_format == quoin::OutputFormat::json) {
    auto list = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      list.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      all = all && r.pass;
    }
    sink.stream() << nlohmann::ordered_json{{"pass", all}, {"criteria", list}}.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      sink.stream() << quoin::format_result(r) << '\n';
      all = all && r.pass;
    }
  }
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernoulli-factory simulations with quantum and classical coins"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  for (const auto* name : {"simulate", "classical", "bounds", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "Path to a key = value config file")->required();
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--out", out, "Override the config output_path");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  const std::string mode = app.get_subcommands().front()->get_name();
  try {
    auto config = quoin::load_config(config_path);
    if (seed) {
      config.seed = *seed;
    }
    if (out) {
      config.output_path = *out;
    }
    if (mode == "simulate") {
      config.mode = quoin::Mode::simulate;
      const auto report = quoin::run_simulate(config);
      warn(report.warnings);
      emit(config, report);
    } else if (mode == "classical") {
      config.mode = quoin::Mode::classical;
      const auto report = quoin::run_classical(config);
      warn(report.warnings);
      emit(config, report);
    } else if (mode == "bounds") {
      config.mode = quoin::Mode::bounds;
      emit(config, quoin::run_bounds(config));
    } else {
      config.mode = quoin::Mode::verify;
      return verify(config);
    }
  } catch (const quoin::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitOk;
}
