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

#include <benchmark/benchmark.h>

#include <cstdint>

#include "quoin/coin.h"
#include "quoin/envelope.h"
#include "quoin/factory.h"
#include "quoin/philox.h"
#include "quoin/pipeline.h"
#include "quoin/quoin.h"

namespace {

void BM_PhiloxWords(benchmark::State& state) {
  quoin::Philox4x32 rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.next32());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxWords);

void BM_BernoulliToss(benchmark::State& state) {
  auto coin = quoin::make_bernoulli(0.3, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coin.toss());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BernoulliToss);

void BM_QuantumF4p(benchmark::State& state) {
  const auto spec = quoin::QuoinSpec::from_degrees(static_cast<double>(state.range(0)));
  auto pipeline = quoin::FactoryPipeline::quantum_f4p(spec, quoin::NoiseModel{}, quoin::PipelineOptions{}, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline.toss());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_QuantumF4p)->Arg(30)->Arg(90)->Arg(150);

void BM_TruncatedDouble(benchmark::State& state) {
  const double p = static_cast<double>(state.range(0)) / 100.0;
  const quoin::TruncatedDoublingEnvelope envelope(0.0175);
  auto coin = quoin::make_bernoulli(p, 7);
  quoin::Philox4x32 aux(7 + quoin::kAuxKeyOffset);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quoin::truncated_double(coin, envelope, aux, std::uint64_t{1} << 32));
  }
  state.counters["draws_per_output"] =
      benchmark::Counter(static_cast<double>(coin.draws()), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_TruncatedDouble)->Arg(10)->Arg(25)->Arg(45);

void BM_ClassicalQt(benchmark::State& state) {
  auto pipeline = quoin::FactoryPipeline::classical_qt(0.25, 0.04, quoin::PipelineOptions{}, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline.toss());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ClassicalQt);

}  // namespace

BENCHMARK_MAIN();
