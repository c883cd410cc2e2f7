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

#include "quoin/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quoin {

BiasEstimate estimate_from_counts(std::uint64_t heads, std::uint64_t n_samples) {
  if (n_samples == 0) {
    throw std::invalid_argument("cannot estimate a bias from zero samples");
  }
  if (heads > n_samples) {
    throw std::invalid_argument("heads exceed samples");
  }
  BiasEstimate est;
  est.n_samples = n_samples;
  est.heads = heads;
  est.p_hat = static_cast<double>(heads) / static_cast<double>(n_samples);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n_samples));
  return est;
}

BiasEstimate estimate_bias(std::span<const Bit> bits) {
  const auto heads = static_cast<std::uint64_t>(std::count(bits.begin(), bits.end(), Bit::head));
  return estimate_from_counts(heads, bits.size());
}

TheoryRow theory_row(double p_hat) {
  if (!(p_hat >= 0.0 && p_hat <= 1.0)) {
    throw std::invalid_argument("p_hat must lie in [0, 1]");
  }
  const double pq = p_hat * (1.0 - p_hat);
  return {0.5 * (1.0 + 2.0 * std::sqrt(pq)), 4.0 * pq};
}

double fit_truncation_epsilon(double value_at_half) {
  if (!(value_at_half >= 0.0 && value_at_half <= 1.0)) {
    throw std::invalid_argument("value_at_half must lie in [0, 1]");
  }
  return 1.0 - value_at_half;
}

double np_tail_bound(const TailBoundParams& params) {
  const double eps = params.eps1p;
  const double n = params.n;
  if (!(eps > 0.0 && eps < 0.25)) {
    throw std::invalid_argument("eps1p must lie in (0, 1/4)");
  }
  if (!(n >= 1.0)) {
    throw std::invalid_argument("coin budget n must be >= 1");
  }
  const double rate = 2.0 * eps * eps;
  const double decay = std::exp(-rate * n);
  const double first = std::numbers::sqrt2 / (eps * (std::numbers::sqrt2 - 1.0)) * std::sqrt(2.0 / n) * decay;
  const double second = 72.0 / -std::expm1(-rate) * decay;
  const double third = 4.0 * std::exp2(-n / 9.0);
  return first + second + third;
}

CoinBudget np_min_n(double eps1p) {
  CoinBudget budget;
  budget.approximation = -std::log(eps1p * eps1p / 36.0) / (2.0 * eps1p * eps1p);
  // Every term decreases in n, so the bound crosses 1 once.
  std::uint64_t lo = 1;
  std::uint64_t hi = 2;
  while (np_tail_bound({eps1p, static_cast<double>(hi)}) > 1.0) {
    lo = hi;
    hi *= 2;
  }
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (np_tail_bound({eps1p, static_cast<double>(mid)}) <= 1.0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  budget.exact = lo;
  return budget;
}

double expected_consumption_from_rates(double m, double n, bool lazy) {
  if (!(m >= 0.0 && m < 1.0 && n >= 0.0 && n < 1.0) || m + n <= 0.0) {
    throw std::invalid_argument("coin rates must satisfy 0 <= m, n < 1 and m + n > 0");
  }
  // Two quoins per m- or n-toss. A race round takes 1 + m tosses when lazy
  // (2 otherwise) and ends with probability 1 - m^2.
  auto race_cost = [lazy](double r) { return lazy ? 2.0 / (1.0 - r) : 4.0 / (1.0 - r * r); };
  const double rounds = (1.0 + m) * (1.0 + n) / (m + n);
  return rounds * (race_cost(m) + race_cost(n));
}

double expected_consumption(double p, bool lazy) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("expected_consumption needs 0 < p < 1");
  }
  const double m = 2.0 * p * (1.0 - p);
  return expected_consumption_from_rates(m, std::max(0.0, 0.5 - m), lazy);
}

ZTest z_test(const BiasEstimate& est, double target, double sigmas) {
  if (est.n_samples < 1000) {
    throw std::invalid_argument("z_test needs at least 1000 samples, got " + std::to_string(est.n_samples));
  }
  const double sd = std::sqrt(target * (1.0 - target) / static_cast<double>(est.n_samples));
  const double diff = est.p_hat - target;
  ZTest out;
  if (sd == 0.0) {
    out.z = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  } else {
    out.z = diff / sd;
  }
  out.pass = std::abs(out.z) < sigmas;
  return out;
}

}  // namespace quoin
