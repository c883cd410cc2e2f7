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
#include <string>

#include "quoin/bit.h"
#include "quoin/coin.h"
#include "quoin/exact.h"
#include "quoin/philox.h"

namespace quoin {

/// A qubit prepared by R_y(theta)|0> = sqrt(p)|0> + sqrt(1-p)|1>, p = cos^2(theta/2).
class QuoinSpec {
 public:
  /// theta in radians, [0, pi].
  static QuoinSpec from_theta(double theta);
  static QuoinSpec from_degrees(double degrees);
  /// Keeps p exact; theta is derived.
  static QuoinSpec from_probability(const ExactProb& p);

  double theta() const { return theta_; }
  double degrees() const;
  const ExactProb& p_exact() const { return p_; }
  double p() const { return to_double(p_); }

 private:
  QuoinSpec(double theta, ExactProb p) : theta_(theta), p_(std::move(p)) {}

  double theta_;
  ExactProb p_;
};

/// Measurement setting. General(a) measures in
/// {sqrt(1-a)|0> + sqrt(a)|1>, sqrt(a)|0> - sqrt(1-a)|1>}; the first vector reads head.
struct Basis {
  enum class Kind { z, x, general };

  Kind kind = Kind::z;
  ExactProb a = 0;

  static Basis z() { return {Kind::z, 0}; }
  static Basis x() { return {Kind::x, ExactProb(1) / 2}; }
  static Basis general(const ExactProb& a);

  /// Any basis other than Z needs a rotation before the Z readout.
  bool needs_prerotation() const { return kind != Kind::z; }
  std::string name() const;
};

/// Imperfections of the simulated qubit. Defaults are the characterised device.
struct NoiseModel {
  double steady_excited = 0.085;
  double purify_residual = 0.004;
  double gate_error = 0.0013;
  double readout_f0 = 0.996;
  double readout_f1 = 0.943;
  bool purification_enabled = true;

  static NoiseModel ideal();

  /// Throws std::invalid_argument naming the first field outside [0, 1].
  void validate() const;

  /// Probability that the qubit enters the rotation in |1> instead of |0>.
  double prepared_excited() const { return purification_enabled ? purify_residual : steady_excited; }

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// P(head) for an ideal quoin: Z -> p, X -> [1 + 2 sqrt(p(1-p))]/2,
/// General(a) -> (sqrt(p(1-a)) + sqrt(a(1-p)))^2.
ExactProb ideal_outcome_prob(const QuoinSpec& spec, const Basis& basis);

/// Closed-form P(head) of the noisy sampler. Stages, in order:
///   prepared state flipped to |1> with prepared_excited() (complements the ideal outcome),
///   symmetric outcome flip with gate_error when the basis needs a pre-rotation,
///   readout confusion: P(head | 0) = readout_f0, P(tail | 1) = readout_f1.
ExactProb noisy_outcome_prob(const QuoinSpec& spec, const Basis& basis, const NoiseModel& noise);

/// P(initialisation measurement reads |0>) = (1 - e) f0 + e (1 - f1), e = steady_excited.
ExactProb purification_acceptance_prob(const NoiseModel& noise);

/// One post-selected initialisation attempt; true when it reads head.
bool purify(const NoiseModel& noise, Philox4x32& rng);

/// Stage-by-stage sampler for one (spec, basis, noise) triple. Keeps tallies of
/// consumed quoins and of purification attempts rejected by post-selection
/// (rejections are not consumptions).
class QuoinSampler {
 public:
  QuoinSampler(const QuoinSpec& spec, const Basis& basis, const NoiseModel& noise);

  Bit sample(Philox4x32& rng);

  std::uint64_t consumed() const { return consumed_; }
  std::uint64_t purification_rejections() const { return rejections_; }
  double ideal_head_prob() const { return ideal_head_; }
  const NoiseModel& noise() const { return noise_; }

  /// Bound on consecutive rejected purification attempts before giving up.
  static constexpr std::uint64_t kMaxPurifyAttempts = 1'000'000;

 private:
  NoiseModel noise_;
  bool prerotated_;
  double ideal_head_;
  std::uint64_t consumed_ = 0;
  std::uint64_t rejections_ = 0;
};

/// Convenience single-shot sampler; prefer QuoinSampler in loops.
Bit sample_quoin(const QuoinSpec& spec, const Basis& basis, const NoiseModel& noise, Philox4x32& rng);

/// A quoin source measured in a fixed basis, viewed as a coin.
class QuoinCoin final : public Coin {
 public:
  QuoinCoin(const QuoinSpec& spec, const Basis& basis, const NoiseModel& noise, Philox4x32& rng)
      : sampler_(spec, basis, noise), rng_(rng) {}

  Bit toss() override { return sampler_.sample(rng_); }
  const QuoinSampler& sampler() const { return sampler_; }

 private:
  QuoinSampler sampler_;
  Philox4x32& rng_;
};

}  // namespace quoin
