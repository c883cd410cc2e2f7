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
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quoin/analysis.h"
#include "quoin/config.h"
#include "quoin/factory.h"
#include "quoin/parallel.h"
#include "quoin/philox.h"
#include "quoin/pipeline.h"
#include "quoin/report.h"

namespace quoin {

/// Aggregated outcome of many derived output bits. Merging is a sum, so the
/// result does not depend on which worker produced which shard.
struct OutputTally {
  std::uint64_t outputs = 0;
  std::uint64_t heads = 0;
  std::uint64_t cutoffs = 0;
  std::uint64_t purification_rejections = 0;
  std::map<std::string, std::uint64_t, std::less<>> consumption;
  /// Per-output primitive consumption, in shard order (kept on request).
  std::vector<std::uint64_t> costs;

  void merge(const OutputTally& other);
  /// Throws std::invalid_argument when no output succeeded.
  BiasEstimate estimate() const;
  double mean_consumption() const;
};

/// Stream tag namespaces. No two sampled quantities share a stream.
namespace tags {
inline constexpr std::uint32_t kSimulate = 0x1u << 28;
inline constexpr std::uint32_t kClassical = 0x2u << 28;
inline constexpr std::uint32_t kAcceptance = 0x3u << 28;
}  // namespace tags

/// Draws `n` outputs of `make(stream)` where stream = shard_stream(tag, shard).
/// `make` returns a callable producing one Bit per call; CutoffError is
/// counted, not propagated.
template <class Make>
OutputTally sample_bits(std::uint64_t n, std::uint32_t tag, unsigned workers, Make make) {
  const ShardPlan plan{n};
  const auto parts = run_shards(plan, workers, [&](std::uint64_t shard, std::uint64_t size) {
    auto coin = make(shard_stream(tag, static_cast<std::uint32_t>(shard)));
    OutputTally t;
    for (std::uint64_t i = 0; i < size; ++i) {
      try {
        t.heads += is_head(coin()) ? 1 : 0;
        ++t.outputs;
      } catch (const CutoffError&) {
        ++t.cutoffs;
      }
    }
    return t;
  });
  OutputTally total;
  for (const auto& part : parts) {
    total.merge(part);
  }
  return total;
}

using PipelineMaker = std::function<FactoryPipeline(std::uint64_t stream)>;

/// As sample_bits for a FactoryPipeline, also summing the per-output meter
/// (successful outputs only) and optionally recording per-output totals.
OutputTally sample_pipeline(const PipelineMaker& make, std::uint64_t n, std::uint32_t tag, unsigned workers,
                            bool keep_costs = false);

/// `n` quoins measured in `basis`; tallies heads and purification rejections.
OutputTally sample_quoins(const QuoinSpec& spec, const Basis& basis, const NoiseModel& noise, std::uint64_t n,
                          std::uint64_t seed, std::uint32_t tag, unsigned workers);

SimulateReport run_simulate(const ExperimentConfig& config);
ClassicalReport run_classical(const ExperimentConfig& config);
BoundsReport run_bounds(const ExperimentConfig& config);

}  // namespace quoin
