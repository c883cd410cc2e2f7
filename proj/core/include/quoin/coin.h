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
#include <string_view>

#include "quoin/bit.h"
#include "quoin/philox.h"

namespace quoin {

/// Anything that emits one binary outcome per call. Derived coins pull from
/// their inputs through this interface, so every construction composes.
class Coin {
 public:
  virtual ~Coin() = default;
  virtual Bit toss() = 0;
};

/// An i.i.d. p-coin driven by a counter-based generator. The (seed, stream)
/// pair fixes the bit stream: draw i is head iff the i-th 32-bit Philox word is
/// below round(p * 2^32), so the realised bias is p to within 2^-33 and exact
/// at p = 0 and p = 1.
class BiasedSource final : public Coin {
 public:
  BiasedSource(double p, std::uint64_t seed, std::uint64_t stream = 0);

  Bit toss() override {
    ++draws_;
    return bit_from_head(rng_.next32() < threshold_);
  }

  double bias() const { return p_; }
  std::uint64_t seed() const { return rng_.seed(); }
  std::uint64_t stream() const { return rng_.stream(); }
  std::uint64_t draws() const { return draws_; }

 private:
  double p_;
  std::uint64_t threshold_;
  Philox4x32 rng_;
  std::uint64_t draws_ = 0;
};

/// Throws std::domain_error unless 0 <= p <= 1.
BiasedSource make_bernoulli(double p, std::uint64_t seed, std::uint64_t stream = 0);

/// Counts primitive consumptions, broken down by the step that consumed them.
/// The total is always the sum of the per-step counts.
class ConsumptionMeter {
 public:
  using Breakdown = std::map<std::string, std::uint64_t, std::less<>>;

  void record(std::string_view step, std::uint64_t count = 1) { counter(step) += count; }

  /// Stable reference to the counter for `step`, created at zero if missing.
  std::uint64_t& counter(std::string_view step);

  std::uint64_t total() const;
  std::uint64_t at(std::string_view step) const;
  const Breakdown& per_step() const { return per_step_; }

  /// Zeroes every counter but keeps the keys (and references into them) alive.
  void reset();

  ConsumptionMeter& operator+=(const ConsumptionMeter& other);

 private:
  Breakdown per_step_;
};

/// Transparent wrapper: forwards every toss and bumps one meter counter.
class MeteredCoin final : public Coin {
 public:
  MeteredCoin(Coin& inner, ConsumptionMeter& meter, std::string_view step = "draws")
      : inner_(inner), count_(meter.counter(step)) {}

  Bit toss() override {
    ++count_;
    return inner_.toss();
  }

 private:
  Coin& inner_;
  std::uint64_t& count_;
};

/// Adapts a callable into a Coin; used to wire pipeline nodes together.
class FunctionCoin final : public Coin {
 public:
  explicit FunctionCoin(std::function<Bit()> fn) : fn_(std::move(fn)) {}
  Bit toss() override { return fn_(); }

 private:
  std::function<Bit()> fn_;
};

}  // namespace quoin
