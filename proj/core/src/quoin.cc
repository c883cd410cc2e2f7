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

#include "quoin/quoin.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

namespace quoin {
namespace {

void require_probability(double v, const char* field) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(field) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

void require_probability(const ExactProb& v, const char* field) {
  if (v < 0 || v > 1) {
    throw std::invalid_argument(std::string(field) + " must lie in [0, 1], got " + v.str(12));
  }
}

ExactProb complement_mix(const ExactProb& head, const ExactProb& flip) { return (1 - flip) * head + flip * (1 - head); }

}  // namespace

QuoinSpec QuoinSpec::from_theta(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::invalid_argument("theta must lie in [0, pi] radians, got " + std::to_string(theta));
  }
  const ExactProb half = ExactProb(theta) / 2;
  const ExactProb c = cos(half);
  return QuoinSpec(theta, c * c);
}

QuoinSpec QuoinSpec::from_degrees(double degrees) {
  if (!(degrees >= 0.0 && degrees <= 180.0)) {
    throw std::invalid_argument("theta must lie in [0, 180] degrees, got " + std::to_string(degrees));
  }
  // Keep the conversion in high precision so 90 degrees gives p = 1/2 to 50 digits.
  const ExactProb half = ExactProb(degrees) * boost::math::constants::pi<ExactProb>() / 360;
  const ExactProb c = cos(half);
  return QuoinSpec(degrees * std::numbers::pi / 180.0, c * c);
}

QuoinSpec QuoinSpec::from_probability(const ExactProb& p) {
  require_probability(p, "p");
  return QuoinSpec(2.0 * std::acos(std::sqrt(to_double(p))), p);
}

double QuoinSpec::degrees() const { return theta_ * 180.0 / std::numbers::pi; }

Basis Basis::general(const ExactProb& a) {
  require_probability(a, "basis parameter a");
  return {Kind::general, a};
}

std::string Basis::name() const {
  switch (kind) {
    case Kind::z:
      return "Z";
    case Kind::x:
      return "X";
    case Kind::general:
      return "General(" + a.str(6) + ")";
  }
  return "?";
}

NoiseModel NoiseModel::ideal() { return {0.0, 0.0, 0.0, 1.0, 1.0, true}; }

void NoiseModel::validate() const {
  require_probability(steady_excited, "steady_excited");
  require_probability(purify_residual, "purify_residual");
  require_probability(gate_error, "gate_error");
  require_probability(readout_f0, "readout_f0");
  require_probability(readout_f1, "readout_f1");
}

ExactProb ideal_outcome_prob(const QuoinSpec& spec, const Basis& basis) {
  const ExactProb& p = spec.p_exact();
  switch (basis.kind) {
    case Basis::Kind::z:
      return p;
    case Basis::Kind::x:
      return (1 + 2 * sqrt(p * (1 - p))) / 2;
    case Basis::Kind::general: {
      const ExactProb amp = sqrt(p * (1 - basis.a)) + sqrt(basis.a * (1 - p));
      return amp * amp;
    }
  }
  return p;
}

ExactProb noisy_outcome_prob(const QuoinSpec& spec, const Basis& basis, const NoiseModel& noise) {
  noise.validate();
  // A |1> input to the rotation measures with the complementary statistics in every basis.
  ExactProb head = complement_mix(ideal_outcome_prob(spec, basis), ExactProb(noise.prepared_excited()));
  if (basis.needs_prerotation()) {
    head = complement_mix(head, ExactProb(noise.gate_error));
  }
  return ExactProb(noise.readout_f0) * head + (1 - ExactProb(noise.readout_f1)) * (1 - head);
}

ExactProb purification_acceptance_prob(const NoiseModel& noise) {
  const ExactProb excited(noise.steady_excited);
  return (1 - excited) * ExactProb(noise.readout_f0) + excited * (1 - ExactProb(noise.readout_f1));
}

bool purify(const NoiseModel& noise, Philox4x32& rng) {
  const bool excited = rng.uniform() < noise.steady_excited;
  const double read_head = excited ? 1.0 - noise.readout_f1 : noise.readout_f0;
  return rng.uniform() < read_head;
}

QuoinSampler::QuoinSampler(const QuoinSpec& spec, const Basis& basis, const NoiseModel& noise)
    : noise_(noise), prerotated_(basis.needs_prerotation()), ideal_head_(to_double(ideal_outcome_prob(spec, basis))) {
  noise_.validate();
}

Bit QuoinSampler::sample(Philox4x32& rng) {
  bool excited;
  if (noise_.purification_enabled) {
    std::uint64_t attempts = 0;
    while (!purify(noise_, rng)) {
      ++rejections_;
      if (++attempts >= kMaxPurifyAttempts) {
        throw std::runtime_error("purification never accepted after " + std::to_string(attempts) + " attempts");
      }
    }
    excited = rng.uniform() < noise_.purify_residual;
  } else {
    excited = rng.uniform() < noise_.steady_excited;
  }
  ++consumed_;

  bool state_zero = rng.uniform() < ideal_head_;
  if (excited) {
    state_zero = !state_zero;
  }
  if (prerotated_ && rng.uniform() < noise_.gate_error) {
    state_zero = !state_zero;
  }
  const bool read_head = state_zero ? rng.uniform() < noise_.readout_f0 : rng.uniform() >= noise_.readout_f1;
  return bit_from_head(read_head);
}

Bit sample_quoin(const QuoinSpec& spec, const Basis& basis, const NoiseModel& noise, Philox4x32& rng) {
  QuoinSampler sampler(spec, basis, noise);
  return sampler.sample(rng);
}

}  // namespace quoin
