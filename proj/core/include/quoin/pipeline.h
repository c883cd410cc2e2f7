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
#include <memory>
#include <optional>
#include <string>

#include "quoin/coin.h"
#include "quoin/factory.h"
#include "quoin/quoin.h"

namespace quoin {

/// Owns a composed coin-processing construction: its leaf sources, the derived
/// coins wired on top of them, the entropy streams, and a per-output meter.
/// Leaves are consumed only through MeteredCoin wrappers.
///
///   quantum_f4p:  ratio(race(diff(z_quoin)), race(diff(x_quoin)))
///   classical_ft: truncated_double(diff(p_coin))
///   classical_qt: or(half(p_coin), sqrt(truncated_double(diff(p_coin))))
class FactoryPipeline {
 public:
  /// Meter keys.
  static constexpr const char* kZQuoins = "z_quoins";
  static constexpr const char* kXQuoins = "x_quoins";
  static constexpr const char* kPCoins = "p_coins";

  static FactoryPipeline quantum_f4p(const QuoinSpec& spec, const NoiseModel& noise, const PipelineOptions& options,
                                     std::uint64_t seed, std::uint64_t stream = 0);
  static FactoryPipeline classical_ft(double p, double eps1, const PipelineOptions& options, std::uint64_t seed,
                                      std::uint64_t stream = 0);
  static FactoryPipeline classical_qt(double p, double eps1, const PipelineOptions& options, std::uint64_t seed,
                                      std::uint64_t stream = 0);

  FactoryPipeline(FactoryPipeline&&) noexcept;
  FactoryPipeline& operator=(FactoryPipeline&&) noexcept;
  ~FactoryPipeline();

  /// One output bit. The meter is reset first, so afterwards it holds exactly
  /// the consumption attributed to this bit.
  Bit toss();

  const ConsumptionMeter& meter() const;
  const PipelineOptions& options() const;
  const std::string& structure() const;

  /// Post-selection rejections across all quoin leaves (0 for classical pipelines).
  std::uint64_t purification_rejections() const;

  /// Closed-form head probability of the ideal construction, when defined.
  std::optional<double> target() const;

 private:
  struct Impl;
  explicit FactoryPipeline(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

/// Key offset separating a pipeline's auxiliary stream from its source stream.
inline constexpr std::uint64_t kAuxKeyOffset = 0x9E3779B97F4A7C15ull;

}  // namespace quoin
