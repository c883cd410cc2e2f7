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

namespace quoin {

/// Bernstein-form polynomial envelopes for h(x) = min{2x, 1 - 2 eps'} on degrees
/// n0, 2 n0, 4 n0, ...
///
/// Lower coefficients are h(k/n); h is concave, so they are consistent under
/// degree doubling. Upper coefficients add a Gaussian bump centred on the kink
/// c = 1/2 - eps':
///
///   upper(n, k) = h(k/n) + (K / sqrt(n)) exp(-n (k/n - c)^2 / (2 alpha)).
///
/// Both the bump height and its width shrink like n^{-1/2}; away from the kink
/// the gap seen by the binomial count decays exponentially in n. n0 is the smallest power of two keeping every upper coefficient <= 1.
class TruncatedDoublingEnvelope {
 public:
  static constexpr double kBumpHeight = 1.8;
  static constexpr double kBumpWidth = 0.5;

  /// Throws std::invalid_argument unless 0 < eps1p < 1/4.
  explicit TruncatedDoublingEnvelope(double eps1p);

  double eps1p() const { return eps1p_; }
  double cap() const { return cap_; }
  double kink() const { return kink_; }
  std::uint64_t initial_degree() const { return n0_; }

  /// min{2x, 1 - 2 eps'}.
  double target(double x) const { return x * 2.0 < cap_ ? x * 2.0 : cap_; }

  double lower(std::uint64_t n, std::uint64_t k) const;
  double upper(std::uint64_t n, std::uint64_t k) const;

  /// E[lower(n, I)] and E[upper(n, I)] for I ~ Hypergeometric(2n, k, n): the
  /// coarse-degree coefficient averaged over where the first n of 2n tosses
  /// put k heads.
  double lower_given_doubled(std::uint64_t n, std::uint64_t k) const;
  double upper_given_doubled(std::uint64_t n, std::uint64_t k) const;

 private:
  double bump(std::uint64_t n, std::uint64_t k) const;
  template <class Coefficient>
  double hypergeometric_mean(std::uint64_t n, std::uint64_t k, Coefficient&& coeff) const;

  double eps1p_;
  double cap_;
  double kink_;
  std::uint64_t n0_;
};

}  // namespace quoin
