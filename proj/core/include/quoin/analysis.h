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
#include <span>

#include "quoin/bit.h"

namespace quoin {

struct BiasEstimate {
  std::uint64_t n_samples = 0;
  std::uint64_t heads = 0;
  double p_hat = 0.0;
  /// sqrt(p_hat (1 - p_hat) / n)
  double std_err = 0.0;
};

/// Throws std::invalid_argument on an empty sequence.
BiasEstimate estimate_bias(std::span<const Bit> bits);
BiasEstimate estimate_from_counts(std::uint64_t heads, std::uint64_t n_samples);

/// Theory columns computed from a measured p, as in the results table.
struct TheoryRow {
  double q_th = 0.0;  ///< [1 + 2 sqrt(p(1-p))]/2
  double f_th = 0.0;  ///< 4 p (1-p)
};

TheoryRow theory_row(double p_hat);

/// eps of the truncated model min{f, 1 - eps} whose value at p = 1/2 is `value_at_half`.
double fit_truncation_epsilon(double value_at_half);

struct TailBoundParams {
  double eps1p = 0.0175;
  double n = 1.0;
};

/// Upper bound on P(N > n) for the doubling construction of min{2p, 1 - 2 eps'}:
///   sqrt2/(eps'(sqrt2-1)) sqrt(2/n) e^{-2 eps'^2 n} + 72 (1 - e^{-2 eps'^2})^{-1} e^{-2 eps'^2 n} + 4 * 2^{-n/9}.
/// Throws std::invalid_argument for eps1p outside (0, 1/4) or n < 1.
double np_tail_bound(const TailBoundParams& params);

struct CoinBudget {
  /// Smallest integer n with np_tail_bound <= 1 (the first n where the bound says anything).
  std::uint64_t exact = 0;
  /// -ln(eps'^2 / 36) / (2 eps'^2), from keeping only the dominant term.
  double approximation = 0.0;
};

CoinBudget np_min_n(double eps1p);

/// Mean quoins per f(p)-coin of the ideal protocol (Z- and X-measured quoins).
/// Throws std::invalid_argument unless 0 < p < 1.
double expected_consumption(double p, bool lazy);

/// Same expectation for arbitrary m- and n-coin rates with m + n > 0:
///   cost per s-coin = 2/(1-m) (lazy) or 4/(1-m^2) (eager), likewise for t with n,
///   rounds of the ratio stage = (1+m)(1+n)/(m+n).
double expected_consumption_from_rates(double m, double n, bool lazy);

struct ZTest {
  double z = 0.0;
  bool pass = true;
};

/// Two-sided z statistic of `est` against `target` using the null standard error
/// sqrt(target (1 - target) / n); passes when |z| < sigmas.
/// Throws std::invalid_argument when est.n_samples < 1000.
ZTest z_test(const BiasEstimate& est, double target, double sigmas = 4.0);

}  // namespace quoin
