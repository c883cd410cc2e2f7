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
#include <stdexcept>
#include <string>

#include "quoin/bit.h"
#include "quoin/coin.h"
#include "quoin/envelope.h"
#include "quoin/exact.h"
#include "quoin/philox.h"

namespace quoin {

/// A repeat-until-exit stage gave up. Carries the stage name and how many
/// rounds (or draws) it attempted.
class CutoffError : public std::runtime_error {
 public:
  CutoffError(std::string stage, std::uint64_t attempted);

  const std::string& stage() const { return stage_; }
  std::uint64_t attempted() const { return attempted_; }

 private:
  std::string stage_;
  std::uint64_t attempted_;
};

struct PipelineOptions {
  /// Cutoff for each repeat-until-exit stage (von Neumann, race, ratio).
  std::uint64_t max_rounds = 1'000'000;
  /// Cutoff on input draws for the doubling and square-root constructions.
  std::uint64_t max_draws = std::uint64_t{1} << 32;
  /// Skip the second m-toss of a race round when the first is tail.
  bool lazy_toss = true;
  /// Take 1/2-coins from auxiliary entropy instead of von Neumann on the p-coin.
  bool free_fair_bits = false;
};

/// Two tosses, repeat on equal outcomes, output the second. Exactly fair for p in (0, 1).
Bit von_neumann(Coin& src, std::uint64_t max_rounds);

/// m-coin: head iff two tosses differ. P(head) = 2p(1-p).
Bit diff_coin(Coin& src);

/// s-coin from an m-coin: first toss tail -> tail; else second toss tail -> head;
/// else repeat. P(head) = m/(m+1). With `lazy`, the second toss is skipped when
/// the first is tail.
Bit race_coin(Coin& m, std::uint64_t max_rounds, bool lazy = true);

/// Toss s then t: (head, tail) -> head, (tail, head) -> tail, else repeat.
/// With s = m/(m+1) and t = n/(n+1), P(head) = m/(m+n).
Bit ratio_coin(Coin& s, Coin& t, std::uint64_t max_rounds);

/// sqrt(f)-coin from an f-coin via the series 1 - sqrt(1-y) = sum_k c_k y^k:
/// draw K with P(K = k) = c_k by stopping after toss k with probability 1/(2k),
/// and output tail only if all K tosses were tail. `aux` supplies the stopping
/// decisions; only f-coin tosses are counted as consumption.
Bit sqrt_coin(Coin& f, Philox4x32& aux, std::uint64_t max_draws);

/// Diagnostics of one truncated_double evaluation.
struct DoublingTrace {
  std::uint64_t draws = 0;
  std::uint64_t stages = 0;
  /// Stages whose envelopes broke the doubling consistency by more than round-off.
  std::uint64_t inconsistencies = 0;
};

/// min{2p, 1 - 2 eps'}-coin by the reverse-time martingale doubling scheme over
/// TruncatedDoublingEnvelope. One uniform from `aux` is drawn per output.
Bit truncated_double(Coin& src, const TruncatedDoublingEnvelope& envelope, Philox4x32& aux,
                     std::uint64_t max_draws, DoublingTrace* trace = nullptr);

/// Convenience overload building the envelope for eps1p.
Bit truncated_double(Coin& src, double eps1p, Philox4x32& aux, std::uint64_t max_draws);

/// min{4p(1-p), 1 - eps1}: diff_coin feeding truncated_double with eps' = eps1/2.
Bit classical_ft(Coin& src, const TruncatedDoublingEnvelope& envelope, Philox4x32& aux, std::uint64_t max_draws);

/// 1/2-coin: von Neumann on `src`, or one auxiliary bit when free_fair_bits is set.
Bit half_coin(Coin& src, Philox4x32& aux, const PipelineOptions& options);

/// Q_t(p) = [1 + sqrt(f_t(p))]/2: toss a 1/2-coin and a sqrt(f_t)-coin, tail iff both tail.
/// With lazy_toss the sqrt branch is skipped when the 1/2-coin shows head.
Bit classical_qt(Coin& src, const TruncatedDoublingEnvelope& envelope, Philox4x32& aux,
                 const PipelineOptions& options);

/// eps3 with 1 - eps3 = [1 + sqrt(1 - eps1)]/2.
double eps3_from_eps1(double eps1);
/// Inverse: eps1 = 1 - (1 - 2 eps3)^2.
double eps1_from_eps3(double eps3);
ExactProb eps3_from_eps1(const ExactProb& eps1);
ExactProb eps1_from_eps3(const ExactProb& eps3);

/// Closed-form targets of the classical constructions.
double classical_ft_target(double p, double eps1);
double classical_qt_target(double p, double eps1);

}  // namespace quoin
