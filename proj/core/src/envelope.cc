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

#include "quoin/envelope.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace quoin {

TruncatedDoublingEnvelope::TruncatedDoublingEnvelope(double eps1p)
    : eps1p_(eps1p), cap_(1.0 - 2.0 * eps1p), kink_(0.5 - eps1p), n0_(8) {
  if (!(eps1p > 0.0 && eps1p < 0.25)) {
    throw std::invalid_argument("eps1p must lie in (0, 1/4), got " + std::to_string(eps1p));
  }
  while (cap_ + kBumpHeight / std::sqrt(static_cast<double>(n0_)) > 1.0) {
    n0_ *= 2;
  }
}

double TruncatedDoublingEnvelope::bump(std::uint64_t n, std::uint64_t k) const {
  const double nd = static_cast<double>(n);
  const double d = static_cast<double>(k) / nd - kink_;
  return kBumpHeight / std::sqrt(nd) * std::exp(-nd * d * d / (2.0 * kBumpWidth));
}

double TruncatedDoublingEnvelope::lower(std::uint64_t n, std::uint64_t k) const {
  return target(static_cast<double>(k) / static_cast<double>(n));
}

double TruncatedDoublingEnvelope::upper(std::uint64_t n, std::uint64_t k) const {
  return std::min(1.0, lower(n, k) + bump(n, k));
}

template <class Coefficient>
double TruncatedDoublingEnvelope::hypergeometric_mean(std::uint64_t n, std::uint64_t k,
                                                      Coefficient&& coeff) const {
  // Support of I: max(0, k - n) .. min(k, n). Walk outward from the mode with the
  // pmf ratio P(i+1)/P(i) = (k-i)(n-i) / ((i+1)(n-k+i+1)) and normalise at the end.
  const std::int64_t nn = static_cast<std::int64_t>(n);
  const std::int64_t kk = static_cast<std::int64_t>(k);
  const std::int64_t lo = std::max<std::int64_t>(0, kk - nn);
  const std::int64_t hi = std::min(kk, nn);
  const std::int64_t mode = std::clamp<std::int64_t>((kk + 1) / 2, lo, hi);
  constexpr double kNegligible = 1e-20;

  double weight_sum = 1.0;
  double value_sum = coeff(static_cast<std::uint64_t>(mode));
  double w = 1.0;
  for (std::int64_t i = mode; i < hi; ++i) {
    w *= static_cast<double>((kk - i) * (nn - i)) / static_cast<double>((i + 1) * (nn - kk + i + 1));
    weight_sum += w;
    value_sum += w * coeff(static_cast<std::uint64_t>(i + 1));
    if (w < kNegligible * weight_sum) break;
  }
  w = 1.0;
  for (std::int64_t i = mode; i > lo; --i) {
    // P(i-1)/P(i) = i (n-k+i) / ((k-i+1)(n-i+1))
    w *= static_cast<double>(i * (nn - kk + i)) / static_cast<double>((kk - i + 1) * (nn - i + 1));
    weight_sum += w;
    value_sum += w * coeff(static_cast<std::uint64_t>(i - 1));
    if (w < kNegligible * weight_sum) break;
  }
  return value_sum / weight_sum;
}

double TruncatedDoublingEnvelope::lower_given_doubled(std::uint64_t n, std::uint64_t k) const {
  return hypergeometric_mean(n, k, [&](std::uint64_t i) { return lower(n, i); });
}

double TruncatedDoublingEnvelope::upper_given_doubled(std::uint64_t n, std::uint64_t k) const {
  return hypergeometric_mean(n, k, [&](std::uint64_t i) { return upper(n, i); });
}

}  // namespace quoin
