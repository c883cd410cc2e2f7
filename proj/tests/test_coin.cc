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

#include <gtest/gtest.h>

#include <vector>

#include "quoin/bit.h"
#include "quoin/coin.h"
#include "quoin/exact.h"
#include "quoin/philox.h"
#include "test_helpers.h"

namespace quoin {
namespace {

using testing::Estimate;
using testing::WithinSigmas;

// Known-answer vectors of the reference Philox4x32-10 implementation.
TEST(Philox, KnownAnswerVectors) {
  EXPECT_EQ(Philox4x32::block({0, 0, 0, 0}, {0, 0}),
            (Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, StreamWordsAreTheBlockFunctionOfCounter) {
  const std::uint64_t seed = 0x0123456789abcdefull;
  const std::uint64_t stream = shard_stream(7, 3);
  Philox4x32 rng(seed, stream);
  for (std::uint64_t block = 0; block < 20; ++block) {
    const auto expected = Philox4x32::block(
        {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), static_cast<std::uint32_t>(stream),
         static_cast<std::uint32_t>(stream >> 32)},
        {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    for (auto word : expected) {
      ASSERT_EQ(rng.next32(), word);
    }
  }
  EXPECT_EQ(rng.position(), 80u);
}

TEST(Philox, SeekReplaysAnyPosition) {
  Philox4x32 rng(42, 1);
  std::vector<std::uint32_t> words(300);
  for (auto& w : words) {
    w = rng.next32();
  }
  for (std::uint64_t start : {0u, 1u, 31u, 32u, 33u, 150u, 299u}) {
    Philox4x32 replay(42, 1);
    replay.seek(start);
    EXPECT_EQ(replay.position(), start);
    for (std::uint64_t i = start; i < words.size(); ++i) {
      ASSERT_EQ(replay.next32(), words[i]) << "start " << start << " word " << i;
    }
  }
}

TEST(Philox, DistinctStreamsDiffer) {
  Philox4x32 a(9, 0);
  Philox4x32 b(9, 1);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) {
    equal += a() == b() ? 1 : 0;
  }
  EXPECT_EQ(equal, 0);
}

TEST(Bit, HeadIsZeroTailIsOne) {
  EXPECT_EQ(static_cast<int>(Bit::head), 0);
  EXPECT_EQ(static_cast<int>(Bit::tail), 1);
  EXPECT_EQ(flip(Bit::head), Bit::tail);
  EXPECT_EQ(bit_from_head(true), Bit::head);
  EXPECT_EQ(to_char(Bit::head), '0');
}

TEST(BiasedSource, DegenerateBiases) {
  auto zero = make_bernoulli(0.0, 11);
  auto one = make_bernoulli(1.0, 11);
  for (int i = 0; i < 100'000; ++i) {
    ASSERT_EQ(zero.toss(), Bit::tail);
    ASSERT_EQ(one.toss(), Bit::head);
  }
}

TEST(BiasedSource, RejectsBiasOutsideUnitInterval) {
  EXPECT_THROW(make_bernoulli(-0.01, 1), std::domain_error);
  EXPECT_THROW(make_bernoulli(1.01, 1), std::domain_error);
  EXPECT_THROW(make_bernoulli(std::nan(""), 1), std::domain_error);
}

TEST(BiasedSource, FairCoinWithinBinomialBound) {
  auto coin = make_bernoulli(0.5, 2024);
  const auto est = Estimate(coin, 1'000'000);
  // 4 * sqrt(0.25 / 1e6)
  EXPECT_LT(std::abs(est.p_hat - 0.5), 0.002);
}

TEST(BiasedSource, FrequencyConsistency) {
  for (double p : {0.1, 0.5, 0.9}) {
    auto coin = make_bernoulli(p, 77);
    EXPECT_TRUE(WithinSigmas(Estimate(coin, 1'000'000), p)) << "p=" << p;
  }
}

TEST(BiasedSource, ReplayDeterminismAndDrawCounting) {
  BiasedSource a(0.3, 5, 2);
  BiasedSource b(0.3, 5, 2);
  for (std::uint64_t i = 1; i <= 10'000; ++i) {
    ASSERT_EQ(a.toss(), b.toss());
    ASSERT_EQ(a.draws(), i);
  }
}

// Pearson chi-square on the 2x2 table of paired bits from two seeds; 6.635 is
// the 0.99 quantile of chi-square with one degree of freedom.
TEST(BiasedSource, SplitIndependenceChiSquare) {
  for (std::uint64_t seed_b : {2u, 3u, 1000u}) {
    BiasedSource a(0.5, 1);
    BiasedSource b(0.5, seed_b);
    double table[2][2] = {};
    constexpr int n = 100'000;
    for (int i = 0; i < n; ++i) {
      table[static_cast<int>(a.toss())][static_cast<int>(b.toss())] += 1;
    }
    double chi2 = 0;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        const double expected = (table[r][0] + table[r][1]) * (table[0][c] + table[1][c]) / n;
        chi2 += (table[r][c] - expected) * (table[r][c] - expected) / expected;
      }
    }
    EXPECT_LT(chi2, 6.635) << "seed " << seed_b;
  }
}

TEST(BiasedSource, ShardStreamsAreIndependent) {
  BiasedSource a(0.5, 9, shard_stream(1, 0));
  BiasedSource b(0.5, 9, shard_stream(1, 1));
  double table[2][2] = {};
  constexpr int n = 100'000;
  for (int i = 0; i < n; ++i) {
    table[static_cast<int>(a.toss())][static_cast<int>(b.toss())] += 1;
  }
  double chi2 = 0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double expected = (table[r][0] + table[r][1]) * (table[0][c] + table[1][c]) / n;
      chi2 += (table[r][c] - expected) * (table[r][c] - expected) / expected;
    }
  }
  EXPECT_LT(chi2, 6.635);
}

TEST(Metering, CountsEveryToss) {
  BiasedSource src(0.5, 3);
  ConsumptionMeter meter;
  MeteredCoin coin(src, meter);
  for (int i = 0; i < 5; ++i) {
    coin.toss();
  }
  EXPECT_EQ(meter.total(), 5u);
  EXPECT_EQ(src.draws(), 5u);
}

TEST(Metering, WrappingIsTransparent) {
  BiasedSource plain(0.37, 8);
  BiasedSource inner(0.37, 8);
  ConsumptionMeter meter;
  MeteredCoin wrapped(inner, meter);
  for (int i = 0; i < 10'000; ++i) {
    ASSERT_EQ(plain.toss(), wrapped.toss());
  }
}

TEST(Metering, NestedMetersAgree) {
  BiasedSource src(0.5, 4);
  ConsumptionMeter inner_meter;
  ConsumptionMeter outer_meter;
  MeteredCoin inner(src, inner_meter);
  MeteredCoin outer(inner, outer_meter);
  for (int i = 0; i < 1234; ++i) {
    outer.toss();
  }
  EXPECT_EQ(inner_meter.total(), 1234u);
  EXPECT_EQ(outer_meter.total(), inner_meter.total());
}

TEST(Metering, TotalIsSumOfSteps) {
  ConsumptionMeter meter;
  meter.record("z", 3);
  meter.record("x", 4);
  meter.record("z");
  EXPECT_EQ(meter.at("z"), 4u);
  EXPECT_EQ(meter.total(), 8u);
  std::uint64_t sum = 0;
  for (const auto& [step, count] : meter.per_step()) {
    sum += count;
  }
  EXPECT_EQ(sum, meter.total());
  meter.reset();
  EXPECT_EQ(meter.total(), 0u);
  EXPECT_EQ(meter.per_step().size(), 2u);
}

TEST(ExactProb, FiftyDigitSquareRoot) {
  const ExactProb two(2);
  const ExactProb root = sqrt(two);
  EXPECT_LT(abs(root * root - two), ExactProb("1e-48"));
  EXPECT_GE(std::numeric_limits<ExactProb>::digits10, 50);
}

TEST(ExactProb, RationalsConvertExactly) {
  const Rational third(1, 3);
  EXPECT_EQ(third * 3, Rational(1));
  EXPECT_LT(abs(to_exact(third) * 3 - 1), ExactProb("1e-49"));
}

}  // namespace
}  // namespace quoin
