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

#include "quoin/factory.h"

#include <algorithm>
#include <cmath>

namespace quoin {

CutoffError::CutoffError(std::string stage, std::uint64_t attempted)
    : std::runtime_error(stage + " cutoff after " + std::to_string(attempted) + " attempts"),
      stage_(std::move(stage)),
      attempted_(attempted) {}

Bit von_neumann(Coin& src, std::uint64_t max_rounds) {
  for (std::uint64_t round = 0; round < max_rounds; ++round) {
    const Bit first = src.toss();
    const Bit second = src.toss();
    if (first != second) {
      return second;
    }
  }
  throw CutoffError("von_neumann", max_rounds);
}

Bit diff_coin(Coin& src) {
  const Bit first = src.toss();
  const Bit second = src.toss();
  return bit_from_head(first != second);
}

Bit race_coin(Coin& m, std::uint64_t max_rounds, bool lazy) {
  for (std::uint64_t round = 0; round < max_rounds; ++round) {
    const Bit first = m.toss();
    if (lazy && first == Bit::tail) {
      return Bit::tail;
    }
    const Bit second = m.toss();
    if (first == Bit::tail) {
      return Bit::tail;
    }
    if (second == Bit::tail) {
      return Bit::head;
    }
  }
  throw CutoffError("race", max_rounds);
}

Bit ratio_coin(Coin& s, Coin& t, std::uint64_t max_rounds) {
  for (std::uint64_t round = 0; round < max_rounds; ++round) {
    const Bit sb = s.toss();
    const Bit tb = t.toss();
    if (sb != tb) {
      return sb;
    }
  }
  throw CutoffError("ratio", max_rounds);
}

Bit sqrt_coin(Coin& f, Philox4x32& aux, std::uint64_t max_draws) {
  // P(K >= k+1 | K >= k) = 1 - 1/(2k), so P(K = k) = c_k, the coefficients of 1 - sqrt(1 - y).
  for (std::uint64_t k = 1; k <= max_draws; ++k) {
    if (f.toss() == Bit::head) {
      return Bit::head;
    }
    if (aux.uniform() * static_cast<double>(2 * k) < 1.0) {
      return Bit::tail;
    }
  }
  throw CutoffError("sqrt", max_draws);
}

Bit truncated_double(Coin& src, const TruncatedDoublingEnvelope& envelope, Philox4x32& aux,
                     std::uint64_t max_draws, DoublingTrace* trace) {
  constexpr double kRoundoff = 1e-9;
  const double threshold = aux.uniform();

  std::uint64_t n = envelope.initial_degree();
  if (n > max_draws) {
    throw CutoffError("truncated_double", n);
  }
  std::uint64_t heads = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    heads += is_head(src.toss());
  }
  double lower = envelope.lower(n, heads);
  double upper = envelope.upper(n, heads);
  std::uint64_t stages = 1;
  std::uint64_t inconsistencies = 0;

  auto finish = [&](Bit out) {
    if (trace != nullptr) {
      *trace = {n, stages, inconsistencies};
    }
    return out;
  };

  while (true) {
    if (threshold < lower) {
      return finish(Bit::head);
    }
    if (threshold >= upper) {
      return finish(Bit::tail);
    }
    if (2 * n > max_draws) {
      throw CutoffError("truncated_double", n);
    }
    for (std::uint64_t i = 0; i < n; ++i) {
      heads += is_head(src.toss());
    }
    const std::uint64_t coarse = n;
    n *= 2;
    ++stages;

    const double fine_lower = envelope.lower(n, heads);
    const double fine_upper = envelope.upper(n, heads);
    const double coarse_lower = envelope.lower_given_doubled(coarse, heads);
    const double coarse_upper = envelope.upper_given_doubled(coarse, heads);
    if (fine_lower < coarse_lower - kRoundoff || fine_upper > coarse_upper + kRoundoff) {
      ++inconsistencies;
    }
    const double spread = coarse_upper - coarse_lower;
    if (spread <= 0.0) {
      continue;
    }
    // Conditional on the doubled count, the updated bounds average to the
    // fine-degree envelope values; they only ever move inward.
    const double width = upper - lower;
    const double raise = std::clamp((fine_lower - coarse_lower) / spread, 0.0, 1.0);
    const double drop = std::clamp((coarse_upper - fine_upper) / spread, 0.0, 1.0);
    const double new_lower = lower + raise * width;
    const double new_upper = upper - drop * width;
    lower = new_lower;
    upper = std::max(new_upper, new_lower);
  }
}

Bit truncated_double(Coin& src, double eps1p, Philox4x32& aux, std::uint64_t max_draws) {
  const TruncatedDoublingEnvelope envelope(eps1p);
  return truncated_double(src, envelope, aux, max_draws);
}

Bit classical_ft(Coin& src, const TruncatedDoublingEnvelope& envelope, Philox4x32& aux, std::uint64_t max_draws) {
  FunctionCoin g([&src] { return diff_coin(src); });
  return truncated_double(g, envelope, aux, max_draws);
}

Bit half_coin(Coin& src, Philox4x32& aux, const PipelineOptions& options) {
  if (options.free_fair_bits) {
    return bit_from_head((aux() >> 63) == 0);
  }
  return von_neumann(src, options.max_rounds);
}

Bit classical_qt(Coin& src, const TruncatedDoublingEnvelope& envelope, Philox4x32& aux,
                 const PipelineOptions& options) {
  const Bit half = half_coin(src, aux, options);
  if (options.lazy_toss && half == Bit::head) {
    return Bit::head;
  }
  FunctionCoin ft([&] { return classical_ft(src, envelope, aux, options.max_draws); });
  const Bit root = sqrt_coin(ft, aux, options.max_draws);
  return bit_from_head(half == Bit::head || root == Bit::head);
}

double eps3_from_eps1(double eps1) { return 1.0 - 0.5 * (1.0 + std::sqrt(1.0 - eps1)); }

double eps1_from_eps3(double eps3) {
  const double root = 1.0 - 2.0 * eps3;
  return 1.0 - root * root;
}

ExactProb eps3_from_eps1(const ExactProb& eps1) { return 1 - (1 + sqrt(1 - eps1)) / 2; }

ExactProb eps1_from_eps3(const ExactProb& eps3) {
  const ExactProb root = 1 - 2 * eps3;
  return 1 - root * root;
}

double classical_ft_target(double p, double eps1) { return std::min(4.0 * p * (1.0 - p), 1.0 - eps1); }

double classical_qt_target(double p, double eps1) {
  return 0.5 * (1.0 + std::sqrt(classical_ft_target(p, eps1)));
}

}  // namespace quoin
