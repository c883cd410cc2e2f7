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

#include <array>

#include "quoin/analysis.h"
#include "quoin/envelope.h"
#include "quoin/factory.h"
#include "quoin/oracle.h"
#include "quoin/pipeline.h"
#include "test_helpers.h"

namespace quoin {
namespace {

using testing::Estimate;
using testing::SameBias;
using testing::WithinSigmas;

constexpr std::uint64_t kRounds = 1'000'000;

const std::array<Rational, 6> kGrid = {Rational(1, 10), Rational(1, 4), Rational(1, 3),
                                       Rational(1, 2),  Rational(2, 3), Rational(9, 10)};

double D(const Rational& r) { return to_double(to_exact(r)); }

// Adapts a callable to the Coin interface.
template <class Fn>
class Lambda final : public Coin {
 public:
  explicit Lambda(Fn fn) : fn_(std::move(fn)) {}
  Bit toss() override { return fn_(); }

 private:
  Fn fn_;
};

template <class Fn>
Lambda<Fn> coin_of(Fn fn) {
  return Lambda<Fn>(std::move(fn));
}

// ---------------------------------------------------------------- oracles

TEST(Oracle, ChainsMatchClosedFormsExactly) {
  for (const auto& p : kGrid) {
    const Rational m = 2 * p * (1 - p);
    const Rational n = Rational(1, 2) - m;
    EXPECT_EQ(oracle::diff(p).head, m);
    EXPECT_EQ(oracle::von_neumann(p).head, Rational(1, 2));
    EXPECT_EQ(oracle::von_neumann(p).cost, 2 / (1 - p * p - (1 - p) * (1 - p)));
    for (bool lazy : {true, false}) {
      const auto s = oracle::race(m, Rational(2), lazy);
      const auto t = oracle::race(n, Rational(2), lazy);
      EXPECT_EQ(s.head, m / (m + 1));
      EXPECT_EQ(t.head, n / (n + 1));
      const auto f = oracle::ratio(s, t);
      EXPECT_EQ(f.head, m / (m + n));
      EXPECT_EQ(f.head, 4 * p * (1 - p));
      EXPECT_NEAR(D(f.cost), expected_consumption(D(p), lazy), 1e-12) << D(p) << " lazy " << lazy;
    }
  }
}

TEST(Oracle, QuoinProtocolThroughXBasisProbabilities) {
  for (const auto& p : kGrid) {
    const ExactProb pe = to_exact(p);
    const ExactProb q = (1 + 2 * sqrt(pe * (1 - pe))) / 2;
    const auto law = oracle::quantum_protocol<ExactProb>(pe, q, true);
    EXPECT_LT(abs(law.head - 4 * pe * (1 - pe)), ExactProb("1e-40"));
    // n = 2q(1-q) = 1/2 - 2p(1-p)
    EXPECT_LT(abs(oracle::diff(q).head - (ExactProb(1) / 2 - 2 * pe * (1 - pe))), ExactProb("1e-45"));
  }
}

// ------------------------------------------------------------ von Neumann

TEST(VonNeumann, FairAtHalfWithFourDraws) {
  BiasedSource src(0.5, 1);
  constexpr std::uint64_t n = 1'000'000;
  std::uint64_t heads = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    heads += is_head(von_neumann(src, kRounds)) ? 1 : 0;
  }
  EXPECT_TRUE(WithinSigmas(estimate_from_counts(heads, n), 0.5));
  // Geometric number of pairs with success 2p(1-p) = 1/2: 4 draws on average.
  const double mean = static_cast<double>(src.draws()) / n;
  EXPECT_NEAR(mean, 4.0, 4 * std::sqrt(8.0 / n));
}

TEST(VonNeumann, FairForSkewedSource) {
  BiasedSource src(0.9, 2);
  auto coin = coin_of([&] { return von_neumann(src, kRounds); });
  EXPECT_TRUE(WithinSigmas(Estimate(coin, 1'000'000), 0.5));
}

TEST(VonNeumann, DegenerateSourceHitsCutoff) {
  BiasedSource src(1.0, 3);
  try {
    von_neumann(src, 1000);
    FAIL() << "expected CutoffError";
  } catch (const CutoffError& e) {
    EXPECT_EQ(e.attempted(), 1000u);
    EXPECT_EQ(src.draws(), 2000u);
  }
}

// ------------------------------------------------------------------ diff

TEST(DiffCoin, Values) {
  for (double p : {0.5, 0.85, 0.0, 1.0}) {
    BiasedSource src(p, 4);
    auto coin = coin_of([&] { return diff_coin(src); });
    const auto est = Estimate(coin, 1'000'000);
    EXPECT_TRUE(WithinSigmas(est, 2 * p * (1 - p))) << p;
    EXPECT_EQ(src.draws(), 2'000'000u);
  }
  EXPECT_DOUBLE_EQ(2 * 0.85 * 0.15, 0.255);
}

// ------------------------------------------------------------------ race

TEST(RaceCoin, Values) {
  {
    BiasedSource m(0.5, 5);
    auto coin = coin_of([&] { return race_coin(m, kRounds); });
    EXPECT_TRUE(WithinSigmas(Estimate(coin, 1'000'000), 1.0 / 3.0));
  }
  {
    BiasedSource m(0.0, 5);
    for (int i = 0; i < 1000; ++i) {
      ASSERT_EQ(race_coin(m, kRounds), Bit::tail);
    }
    EXPECT_EQ(m.draws(), 1000u);
  }
  {
    BiasedSource m(1.0, 5);
    EXPECT_THROW(race_coin(m, 100), CutoffError);
  }
}

TEST(RaceCoin, LazyAndEagerAgreeInDistribution) {
  for (double mv : {0.2, 0.5, 0.8}) {
    BiasedSource a(mv, 6);
    BiasedSource b(mv, 7);
    auto lazy = coin_of([&] { return race_coin(a, kRounds, true); });
    auto eager = coin_of([&] { return race_coin(b, kRounds, false); });
    const auto el = Estimate(lazy, 500'000);
    const auto ee = Estimate(eager, 500'000);
    EXPECT_TRUE(SameBias(el, ee)) << mv;
    EXPECT_TRUE(WithinSigmas(ee, mv / (mv + 1)));
    EXPECT_LT(a.draws(), b.draws());
    // Lazy: 1 + m tosses per round, eager: 2; rounds = 1 / (1 - m^2).
    EXPECT_NEAR(static_cast<double>(a.draws()) / 500'000, 1 / (1 - mv), 0.02 / (1 - mv));
    EXPECT_NEAR(static_cast<double>(b.draws()) / 500'000, 2 / (1 - mv * mv), 0.02 / (1 - mv * mv));
  }
}

// ----------------------------------------------------------------- ratio

TEST(RatioCoin, Values) {
  const auto run = [](double m, double n, std::uint64_t seed) {
    BiasedSource ms(m, seed);
    BiasedSource ns(n, seed + 1);
    auto s = coin_of([&] { return race_coin(ms, kRounds); });
    auto t = coin_of([&] { return race_coin(ns, kRounds); });
    auto f = coin_of([&] { return ratio_coin(s, t, kRounds); });
    return Estimate(f, 1'000'000);
  };
  const auto certain = run(0.5, 0.0, 10);
  EXPECT_EQ(certain.heads, certain.n_samples);
  EXPECT_TRUE(WithinSigmas(run(0.3, 0.3, 12), 0.5));
  EXPECT_TRUE(WithinSigmas(run(0.255, 0.245, 14), 0.51));
}

TEST(RatioCoin, DivergentInputHitsCutoff) {
  BiasedSource s(1.0, 1);
  BiasedSource t(1.0, 2);
  EXPECT_THROW(ratio_coin(s, t, 50), CutoffError);
}

// Monte Carlo of every combinator stage on the rational grid against the chain oracle.
TEST(Combinators, MonteCarloMatchesOracleOnGrid) {
  std::uint64_t seed = 1000;
  for (const auto& pr : kGrid) {
    const double p = D(pr);
    const Rational m = 2 * pr * (1 - pr);
    const Rational n = Rational(1, 2) - m;
    BiasedSource src(p, ++seed);
    BiasedSource nsrc(D(n), ++seed);
    auto mcoin = coin_of([&] { return diff_coin(src); });
    auto s = coin_of([&] { return race_coin(mcoin, kRounds); });
    auto t = coin_of([&] { return race_coin(nsrc, kRounds); });
    auto f = coin_of([&] { return ratio_coin(s, t, kRounds); });
    auto vn = coin_of([&] { return von_neumann(src, kRounds); });
    EXPECT_TRUE(WithinSigmas(Estimate(mcoin, 1'000'000), D(oracle::diff(pr).head))) << p;
    EXPECT_TRUE(WithinSigmas(Estimate(vn, 1'000'000), D(oracle::von_neumann(pr).head))) << p;
    const auto s_law = oracle::race(m, Rational(2), true);
    EXPECT_TRUE(WithinSigmas(Estimate(s, 1'000'000), D(s_law.head))) << p;
    EXPECT_TRUE(WithinSigmas(Estimate(f, 1'000'000), D(oracle::ratio(s_law, oracle::race(n, Rational(1), true)).head)))
        << p;
  }
}

// Cutoff probability of a repeat stage is (repeat probability)^R.
TEST(Cutoff, FollowsGeometricLaw) {
  constexpr std::uint64_t n = 200'000;
  const auto cutoff_rate = [&](auto&& toss) {
    std::uint64_t cut = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      try {
        toss();
      } catch (const CutoffError&) {
        ++cut;
      }
    }
    return estimate_from_counts(cut, n);
  };
  {
    BiasedSource m(0.9, 21);
    EXPECT_TRUE(WithinSigmas(cutoff_rate([&] { return race_coin(m, 3); }), std::pow(0.81, 3)));
  }
  {
    BiasedSource src(0.5, 22);
    EXPECT_TRUE(WithinSigmas(cutoff_rate([&] { return von_neumann(src, 2); }), 0.25));
  }
  {
    BiasedSource s(0.5, 23);
    BiasedSource t(0.5, 24);
    EXPECT_TRUE(WithinSigmas(cutoff_rate([&] { return ratio_coin(s, t, 4); }), std::pow(0.5, 4)));
  }
}

// ----------------------------------------------------------- quantum_f4p

BiasEstimate RunProtocol(FactoryPipeline& pipeline, std::uint64_t n, double* mean_quoins = nullptr) {
  std::uint64_t heads = 0;
  std::uint64_t quoins = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    heads += is_head(pipeline.toss()) ? 1 : 0;
    const auto& meter = pipeline.meter();
    EXPECT_EQ(meter.total(), meter.at(FactoryPipeline::kZQuoins) + meter.at(FactoryPipeline::kXQuoins));
    EXPECT_GE(meter.total(), 1u);
    quoins += meter.total();
  }
  if (mean_quoins != nullptr) {
    *mean_quoins = static_cast<double>(quoins) / static_cast<double>(n);
  }
  return estimate_from_counts(heads, n);
}

TEST(QuantumF4p, CertainAtHalf) {
  auto pipeline = FactoryPipeline::quantum_f4p(QuoinSpec::from_degrees(90), NoiseModel::ideal(), {}, 1);
  double mean = 0;
  const auto est = RunProtocol(pipeline, 200'000, &mean);
  EXPECT_EQ(est.heads, est.n_samples);
  EXPECT_GE(mean, 18.0 * 0.98);
  EXPECT_LE(mean, 24.0);
}

TEST(QuantumF4p, NearlyTailAtTableEdge) {
  auto pipeline =
      FactoryPipeline::quantum_f4p(QuoinSpec::from_probability(ExactProb("0.996")), NoiseModel::ideal(), {}, 2);
  const double f = 4 * 0.996 * 0.004;
  EXPECT_NEAR(f, 0.016, 0.0005);
  EXPECT_TRUE(WithinSigmas(RunProtocol(pipeline, 1'000'000), f));
}

TEST(QuantumF4p, EightNinthsAtOneThird) {
  auto pipeline =
      FactoryPipeline::quantum_f4p(QuoinSpec::from_probability(ExactProb(1) / 3), NoiseModel::ideal(), {}, 3);
  EXPECT_TRUE(WithinSigmas(RunProtocol(pipeline, 1'000'000), 8.0 / 9.0));
}

TEST(QuantumF4p, BranchRatesSumToHalf) {
  for (int d : {20, 60, 90, 130}) {
    const auto spec = QuoinSpec::from_degrees(d);
    Philox4x32 rz(31, 0);
    Philox4x32 rx(31, 1);
    QuoinCoin z(spec, Basis::z(), NoiseModel::ideal(), rz);
    QuoinCoin x(spec, Basis::x(), NoiseModel::ideal(), rx);
    auto m = coin_of([&] { return diff_coin(z); });
    auto n = coin_of([&] { return diff_coin(x); });
    constexpr std::uint64_t count = 1'000'000;
    const auto em = Estimate(m, count);
    const auto en = Estimate(n, count);
    const double sigma = std::hypot(em.std_err, en.std_err);
    EXPECT_LT(std::abs(em.p_hat + en.p_hat - 0.5), 4 * sigma) << d;
  }
}

TEST(QuantumF4p, SymmetricUnderSupplementaryAngles) {
  for (int d : {15, 40, 75}) {
    auto a = FactoryPipeline::quantum_f4p(QuoinSpec::from_degrees(d), NoiseModel::ideal(), {}, 40);
    auto b = FactoryPipeline::quantum_f4p(QuoinSpec::from_degrees(180 - d), NoiseModel::ideal(), {}, 41);
    EXPECT_TRUE(SameBias(RunProtocol(a, 300'000), RunProtocol(b, 300'000))) << d;
  }
}

TEST(QuantumF4p, LazyAndEagerDifferOnlyInCost) {
  PipelineOptions eager;
  eager.lazy_toss = false;
  const auto spec = QuoinSpec::from_degrees(70);
  auto lazy_pipe = FactoryPipeline::quantum_f4p(spec, NoiseModel::ideal(), {}, 50);
  auto eager_pipe = FactoryPipeline::quantum_f4p(spec, NoiseModel::ideal(), eager, 51);
  double lazy_mean = 0;
  double eager_mean = 0;
  const auto el = RunProtocol(lazy_pipe, 300'000, &lazy_mean);
  const auto ee = RunProtocol(eager_pipe, 300'000, &eager_mean);
  EXPECT_TRUE(SameBias(el, ee));
  const double p = spec.p();
  EXPECT_NEAR(lazy_mean, expected_consumption(p, true), 0.02 * expected_consumption(p, true));
  EXPECT_NEAR(eager_mean, expected_consumption(p, false), 0.02 * expected_consumption(p, false));
  EXPECT_LT(lazy_mean, eager_mean);
}

TEST(QuantumF4p, ReplaysUnderSameSeed) {
  auto a = FactoryPipeline::quantum_f4p(QuoinSpec::from_degrees(33), NoiseModel{}, {}, 9, 4);
  auto b = FactoryPipeline::quantum_f4p(QuoinSpec::from_degrees(33), NoiseModel{}, {}, 9, 4);
  for (int i = 0; i < 10'000; ++i) {
    ASSERT_EQ(a.toss(), b.toss());
    ASSERT_EQ(a.meter().per_step(), b.meter().per_step());
  }
}

// -------------------------------------------------------------- envelope

TEST(Envelope, DoublingConsistencyForEveryCount) {
  for (double eps : {0.1, 0.2, 0.24}) {
    const TruncatedDoublingEnvelope env(eps);
    for (std::uint64_t n = env.initial_degree(); n <= 8 * env.initial_degree(); n *= 2) {
      for (std::uint64_t k = 0; k <= 2 * n; ++k) {
        const double lo = env.lower(2 * n, k);
        const double hi = env.upper(2 * n, k);
        ASSERT_LE(lo, hi) << eps << " " << n << " " << k;
        ASSERT_GE(lo, env.lower_given_doubled(n, k) - 1e-9) << eps << " " << n << " " << k;
        ASSERT_LE(hi, env.upper_given_doubled(n, k) + 1e-9) << eps << " " << n << " " << k;
        ASSERT_GE(lo, 0.0);
        ASSERT_LE(hi, 1.0);
      }
    }
  }
}

TEST(Envelope, InitialDegreeKeepsUpperBelowOne) {
  const TruncatedDoublingEnvelope env(0.0175);
  EXPECT_EQ(env.initial_degree(), 4096u);
  EXPECT_DOUBLE_EQ(env.cap(), 0.965);
  EXPECT_DOUBLE_EQ(env.kink(), 0.4825);
  EXPECT_THROW(TruncatedDoublingEnvelope(0.0), std::invalid_argument);
  EXPECT_THROW(TruncatedDoublingEnvelope(0.25), std::invalid_argument);
}

// ------------------------------------------------------- truncated_double

BiasEstimate RunDouble(double p, double eps, std::uint64_t n, std::uint64_t seed, std::vector<std::uint64_t>* draws) {
  const TruncatedDoublingEnvelope env(eps);
  BiasedSource src(p, seed);
  Philox4x32 aux(seed + kAuxKeyOffset);
  std::uint64_t heads = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    DoublingTrace trace;
    heads += is_head(truncated_double(src, env, aux, std::uint64_t{1} << 32, &trace)) ? 1 : 0;
    EXPECT_EQ(trace.inconsistencies, 0u);
    if (draws != nullptr) {
      draws->push_back(trace.draws);
    }
  }
  return estimate_from_counts(heads, n);
}

TEST(TruncatedDouble, Values) {
  EXPECT_TRUE(WithinSigmas(RunDouble(0.1, 0.0175, 100'000, 60, nullptr), 0.2));
  EXPECT_TRUE(WithinSigmas(RunDouble(0.5, 0.0175, 100'000, 61, nullptr), 0.965));
  const auto zero = RunDouble(0.0, 0.0175, 1'000, 62, nullptr);
  EXPECT_EQ(zero.heads, 0u);
}

TEST(TruncatedDouble, WiderGapGrid) {
  for (double p : {0.05, 0.2, 0.3, 0.45, 0.7}) {
    EXPECT_TRUE(WithinSigmas(RunDouble(p, 0.1, 200'000, 63, nullptr), std::min(2 * p, 0.8))) << p;
  }
}

// Empirical P(N > n) against the tail bound, over the budgets where the bound is
// at most 1 and large enough to be resolved with 1e5 outputs.
TEST(TruncatedDouble, TailWithinBoundWhereResolvable) {
  for (double p : {0.1, 0.5, 2.0 / 3.0}) {
    std::vector<std::uint64_t> draws;
    RunDouble(p, 0.0175, 100'000, 64, &draws);
    for (double n : {19'062.0, 22'000.0, 25'000.0}) {
      const double bound = np_tail_bound({0.0175, n});
      ASSERT_LE(bound, 1.0);
      std::uint64_t over = 0;
      for (auto d : draws) {
        over += static_cast<double>(d) > n ? 1 : 0;
      }
      EXPECT_LE(static_cast<double>(over) / draws.size(), bound) << "p=" << p << " n=" << n;
    }
  }
}

TEST(TruncatedDouble, DrawCutoff) {
  const TruncatedDoublingEnvelope env(0.0175);
  BiasedSource src(0.5, 70);
  Philox4x32 aux(71);
  EXPECT_THROW(truncated_double(src, env, aux, 100), CutoffError);
}

// ------------------------------------------------------------------ sqrt

TEST(SqrtCoin, Values) {
  for (double f : {1.0, 0.25, 0.81, 0.1}) {
    BiasedSource src(f, 80);
    Philox4x32 aux(81);
    auto coin = coin_of([&] { return sqrt_coin(src, aux, std::uint64_t{1} << 32); });
    constexpr std::uint64_t n = 200'000;
    const auto est = Estimate(coin, n);
    EXPECT_TRUE(WithinSigmas(est, std::sqrt(f))) << f;
    EXPECT_LT(static_cast<double>(src.draws()) / n, 10.0) << f;
  }
}

TEST(SqrtCoin, ZeroInputNeedsCutoff) {
  BiasedSource src(0.0, 82);
  Philox4x32 aux(83);
  std::uint64_t cut = 0;
  for (int i = 0; i < 2000; ++i) {
    try {
      EXPECT_EQ(sqrt_coin(src, aux, 64), Bit::tail);
    } catch (const CutoffError&) {
      ++cut;
    }
  }
  // P(K > 64) = prod_{k<=64} (1 - 1/(2k)) ~ 0.07
  EXPECT_GT(cut, 0u);
}

// -------------------------------------------------------- classical ft/qt

BiasEstimate RunPipeline(FactoryPipeline pipeline, std::uint64_t n, double* mean_coins) {
  std::uint64_t heads = 0;
  std::uint64_t coins = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    heads += is_head(pipeline.toss()) ? 1 : 0;
    coins += pipeline.meter().at(FactoryPipeline::kPCoins);
  }
  *mean_coins = static_cast<double>(coins) / n;
  return estimate_from_counts(heads, n);
}

TEST(ClassicalFt, Values) {
  double mean = 0;
  EXPECT_TRUE(WithinSigmas(RunPipeline(FactoryPipeline::classical_ft(0.5, 0.035, {}, 90), 100'000, &mean), 0.965));
  EXPECT_GE(mean, 2 * 4096);
  EXPECT_TRUE(WithinSigmas(RunPipeline(FactoryPipeline::classical_ft(0.1, 0.035, {}, 91), 100'000, &mean), 0.36));
  const auto one = RunPipeline(FactoryPipeline::classical_ft(1.0, 0.035, {}, 92), 1'000, &mean);
  EXPECT_EQ(one.heads, 0u);
}

TEST(ClassicalQt, Values) {
  EXPECT_NEAR(eps3_from_eps1(0.04), 0.0101, 0.0001);
  double mean = 0;
  const double target = classical_qt_target(0.5, 0.04);
  EXPECT_NEAR(target, 0.990, 0.0005);
  EXPECT_TRUE(WithinSigmas(RunPipeline(FactoryPipeline::classical_qt(0.5, 0.04, {}, 93), 50'000, &mean), target));
  // At p = 0 the square-root branch never sees a head and its draw count has
  // infinite mean, so only the closed form is checked.
  EXPECT_DOUBLE_EQ(classical_qt_target(0.0, 0.04), 0.5);
}

TEST(ClassicalQt, FreeFairBitsOnlyChangeCost) {
  double paid = 0;
  double free = 0;
  PipelineOptions options;
  options.free_fair_bits = true;
  const auto a = RunPipeline(FactoryPipeline::classical_qt(0.3, 0.04, {}, 95), 30'000, &paid);
  const auto b = RunPipeline(FactoryPipeline::classical_qt(0.3, 0.04, options, 96), 30'000, &free);
  EXPECT_TRUE(SameBias(a, b));
  EXPECT_GT(paid, free);
}

TEST(HalfCoin, VonNeumannOrAuxiliary) {
  BiasedSource src(0.7, 97);
  Philox4x32 aux(98);
  PipelineOptions options;
  auto paid = coin_of([&] { return half_coin(src, aux, options); });
  EXPECT_TRUE(WithinSigmas(Estimate(paid, 500'000), 0.5));
  const auto before = src.draws();
  options.free_fair_bits = true;
  auto free = coin_of([&] { return half_coin(src, aux, options); });
  EXPECT_TRUE(WithinSigmas(Estimate(free, 500'000), 0.5));
  EXPECT_EQ(src.draws(), before);
}

TEST(Pipeline, StructureAndTargets) {
  const auto q = FactoryPipeline::quantum_f4p(QuoinSpec::from_degrees(90), NoiseModel::ideal(), {}, 1);
  EXPECT_FALSE(q.structure().empty());
  ASSERT_TRUE(q.target().has_value());
  EXPECT_NEAR(*q.target(), 1.0, 1e-15);
  const auto ft = FactoryPipeline::classical_ft(0.5, 0.035, {}, 1);
  EXPECT_NEAR(*ft.target(), 0.965, 1e-15);
  EXPECT_EQ(ft.purification_rejections(), 0u);
}

}  // namespace
}  // namespace quoin
