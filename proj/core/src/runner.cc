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

#include "quoin/runner.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace quoin {
namespace {

std::uint32_t simulate_tag(std::size_t row, std::uint32_t quantity) {
  return tags::kSimulate | static_cast<std::uint32_t>(row << 4) | quantity;
}

std::uint64_t nearest_rank(const std::vector<std::uint64_t>& sorted, double q) {
  if (sorted.empty()) {
    return 0;
  }
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

void OutputTally::merge(const OutputTally& other) {
  outputs += other.outputs;
  heads += other.heads;
  cutoffs += other.cutoffs;
  purification_rejections += other.purification_rejections;
  for (const auto& [step, count] : other.consumption) {
    consumption[step] += count;
  }
  costs.insert(costs.end(), other.costs.begin(), other.costs.end());
}

BiasEstimate OutputTally::estimate() const { return estimate_from_counts(heads, outputs); }

double OutputTally::mean_consumption() const {
  if (outputs == 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::uint64_t total = 0;
  for (const auto& [step, count] : consumption) {
    total += count;
  }
  return static_cast<double>(total) / static_cast<double>(outputs);
}

OutputTally sample_pipeline(const PipelineMaker& make, std::uint64_t n, std::uint32_t tag, unsigned workers,
                            bool keep_costs) {
  const ShardPlan plan{n};
  const auto parts = run_shards(plan, workers, [&](std::uint64_t shard, std::uint64_t size) {
    auto pipeline = make(shard_stream(tag, static_cast<std::uint32_t>(shard)));
    OutputTally t;
    if (keep_costs) {
      t.costs.reserve(size);
    }
    for (std::uint64_t i = 0; i < size; ++i) {
      Bit bit;
      try {
        bit = pipeline.toss();
      } catch (const CutoffError&) {
        ++t.cutoffs;
        continue;
      }
      ++t.outputs;
      t.heads += is_head(bit) ? 1 : 0;
      for (const auto& [step, count] : pipeline.meter().per_step()) {
        t.consumption[step] += count;
      }
      if (keep_costs) {
        t.costs.push_back(pipeline.meter().total());
      }
    }
    t.purification_rejections = pipeline.purification_rejections();
    return t;
  });
  OutputTally total;
  for (const auto& part : parts) {
    total.merge(part);
  }
  return total;
}

OutputTally sample_quoins(const QuoinSpec& spec, const Basis& basis, const NoiseModel& noise, std::uint64_t n,
                          std::uint64_t seed, std::uint32_t tag, unsigned workers) {
  const ShardPlan plan{n};
  const auto parts = run_shards(plan, workers, [&](std::uint64_t shard, std::uint64_t size) {
    Philox4x32 rng(seed, shard_stream(tag, static_cast<std::uint32_t>(shard)));
    QuoinSampler sampler(spec, basis, noise);
    OutputTally t;
    for (std::uint64_t i = 0; i < size; ++i) {
      t.heads += is_head(sampler.sample(rng)) ? 1 : 0;
    }
    t.outputs = size;
    t.consumption["quoins"] = sampler.consumed();
    t.purification_rejections = sampler.purification_rejections();
    return t;
  });
  OutputTally total;
  for (const auto& part : parts) {
    total.merge(part);
  }
  return total;
}

SimulateReport run_simulate(const ExperimentConfig& config) {
  validate(config);
  SimulateReport report;
  report.seed = config.seed;
  if (config.n_quoins == 0 || config.n_outputs == 0) {
    report.warnings.push_back(fmt::format("n_quoins = {}, n_outputs = {}: nothing to sample, report is empty",
                                          config.n_quoins, config.n_outputs));
    return report;
  }
  for (std::size_t i = 0; i < config.theta_list.size(); ++i) {
    const auto spec = QuoinSpec::from_degrees(config.theta_list[i]);
    SimulateRow row;
    row.theta_deg = config.theta_list[i];
    const auto z = sample_quoins(spec, Basis::z(), config.noise, config.n_quoins, config.seed, simulate_tag(i, 0),
                                 config.workers);
    const auto x = sample_quoins(spec, Basis::x(), config.noise, config.n_quoins, config.seed, simulate_tag(i, 1),
                                 config.workers);
    row.p = z.estimate();
    row.q = x.estimate();
    row.theory = theory_row(row.p.p_hat);
    const auto f = sample_pipeline(
        [&](std::uint64_t stream) {
          return FactoryPipeline::quantum_f4p(spec, config.noise, config.pipeline, config.seed, stream);
        },
        config.n_outputs, simulate_tag(i, 2), config.workers);
    row.cutoffs = f.cutoffs;
    row.purification_rejections = z.purification_rejections + x.purification_rejections + f.purification_rejections;
    if (f.outputs == 0) {
      row.f.p_hat = std::numeric_limits<double>::quiet_NaN();
      row.f.std_err = std::numeric_limits<double>::quiet_NaN();
      row.mean_quoins_per_f = std::numeric_limits<double>::quiet_NaN();
      report.warnings.push_back(fmt::format("theta {:g}: every output hit a cutoff", row.theta_deg));
    } else {
      row.f = f.estimate();
      row.mean_quoins_per_f = f.mean_consumption();
      for (const auto& [step, count] : f.consumption) {
        row.mean_per_step[step] = static_cast<double>(count) / static_cast<double>(f.outputs);
      }
    }
    if (f.cutoffs > 0) {
      report.warnings.push_back(fmt::format("theta {:g}: {} outputs hit a cutoff", row.theta_deg, f.cutoffs));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

ClassicalReport run_classical(const ExperimentConfig& config) {
  validate(config);
  ClassicalReport report;
  report.seed = config.seed;
  report.eps1 = config.eps1;
  report.eps1p = config.eps1p;
  if (config.n_outputs == 0) {
    report.warnings.push_back("n_outputs = 0: nothing to sample, report is empty");
    return report;
  }
  struct Construction {
    const char* name;
    double eps1;
    FactoryPipeline (*make)(double, double, const PipelineOptions&, std::uint64_t, std::uint64_t);
    double (*target)(double, double);
  };
  const Construction constructions[] = {
      {"classical_ft", 2.0 * config.eps1p, &FactoryPipeline::classical_ft, &classical_ft_target},
      {"classical_qt", config.eps1, &FactoryPipeline::classical_qt, &classical_qt_target},
  };
  for (std::size_t i = 0; i < config.p_list.size(); ++i) {
    const double p = config.p_list[i];
    for (std::uint32_t c = 0; c < 2; ++c) {
      const auto& construction = constructions[c];
      ClassicalRow row;
      row.construction = construction.name;
      row.p = p;
      row.target = construction.target(p, construction.eps1);
      auto tally = sample_pipeline(
          [&](std::uint64_t stream) {
            return construction.make(p, construction.eps1, config.pipeline, config.seed, stream);
          },
          config.n_outputs, tags::kClassical | static_cast<std::uint32_t>(i << 4) | c, config.workers, true);
      row.cutoffs = tally.cutoffs;
      if (tally.outputs == 0) {
        report.warnings.push_back(fmt::format("{} at p = {:g}: every output hit a cutoff", row.construction, p));
        report.rows.push_back(std::move(row));
        continue;
      }
      row.bias = tally.estimate();
      row.z = row.bias.n_samples >= 1000 ? z_test(row.bias, row.target).z : std::numeric_limits<double>::quiet_NaN();
      row.mean_coins = tally.mean_consumption();
      std::sort(tally.costs.begin(), tally.costs.end());
      row.median_coins = nearest_rank(tally.costs, 0.5);
      row.q90_coins = nearest_rank(tally.costs, 0.9);
      row.q99_coins = nearest_rank(tally.costs, 0.99);
      row.max_coins = tally.costs.back();
      if (tally.cutoffs > 0) {
        report.warnings.push_back(
            fmt::format("{} at p = {:g}: {} outputs hit a cutoff", row.construction, p, tally.cutoffs));
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

BoundsReport run_bounds(const ExperimentConfig& config) {
  validate(config);
  BoundsReport report;
  for (double eps : config.eps1p_list) {
    for (double n : config.n_list) {
      report.rows.push_back({eps, n, np_tail_bound({eps, n})});
    }
    const auto budget = np_min_n(eps);
    report.min_n.push_back({eps, budget, 2.0 * budget.approximation});
  }
  return report;
}

}  // namespace quoin
