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

#include "quoin/coin.h"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace quoin {

namespace {

double checked_bias(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("coin bias must lie in [0, 1], got " + std::to_string(p));
  }
  return p;
}

}  // namespace

BiasedSource::BiasedSource(double p, std::uint64_t seed, std::uint64_t stream)
    : p_(checked_bias(p)), threshold_(static_cast<std::uint64_t>(std::llround(p * 0x1.0p32))), rng_(seed, stream) {}

BiasedSource make_bernoulli(double p, std::uint64_t seed, std::uint64_t stream) {
  return BiasedSource(p, seed, stream);
}

std::uint64_t& ConsumptionMeter::counter(std::string_view step) {
  auto it = per_step_.find(step);
  if (it == per_step_.end()) {
    it = per_step_.emplace(std::string(step), 0).first;
  }
  return it->second;
}

std::uint64_t ConsumptionMeter::total() const {
  return std::accumulate(per_step_.begin(), per_step_.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

std::uint64_t ConsumptionMeter::at(std::string_view step) const {
  auto it = per_step_.find(step);
  return it == per_step_.end() ? 0 : it->second;
}

void ConsumptionMeter::reset() {
  for (auto& kv : per_step_) {
    kv.second = 0;
  }
}

ConsumptionMeter& ConsumptionMeter::operator+=(const ConsumptionMeter& other) {
  for (const auto& [step, count] : other.per_step_) {
    counter(step) += count;
  }
  return *this;
}

}  // namespace quoin
