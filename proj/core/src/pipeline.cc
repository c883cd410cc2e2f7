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

#include "quoin/pipeline.h"

#include <vector>

namespace quoin {

struct FactoryPipeline::Impl {
  Impl(const PipelineOptions& opts, std::uint64_t seed, std::uint64_t stream)
      : options(opts), entropy(seed, stream), aux(seed + kAuxKeyOffset, stream) {}

  template <class C, class... Args>
  C& make(Args&&... args) {
    auto node = std::make_unique<C>(std::forward<Args>(args)...);
    C& ref = *node;
    nodes.push_back(std::move(node));
    return ref;
  }

  PipelineOptions options;
  Philox4x32 entropy;
  Philox4x32 aux;
  ConsumptionMeter meter;
  std::vector<std::unique_ptr<Coin>> nodes;
  std::vector<const QuoinSampler*> samplers;
  std::optional<TruncatedDoublingEnvelope> envelope;
  Coin* root = nullptr;
  std::string structure;
  std::optional<double> target;
};

FactoryPipeline::FactoryPipeline(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
FactoryPipeline::FactoryPipeline(FactoryPipeline&&) noexcept = default;
FactoryPipeline& FactoryPipeline::operator=(FactoryPipeline&&) noexcept = default;
FactoryPipeline::~FactoryPipeline() = default;

FactoryPipeline FactoryPipeline::quantum_f4p(const QuoinSpec& spec, const NoiseModel& noise,
                                             const PipelineOptions& options, std::uint64_t seed,
                                             std::uint64_t stream) {
  auto impl = std::make_unique<Impl>(options, seed, stream);
  Impl& s = *impl;
  auto& z = s.make<QuoinCoin>(spec, Basis::z(), noise, s.entropy);
  auto& x = s.make<QuoinCoin>(spec, Basis::x(), noise, s.entropy);
  s.samplers = {&z.sampler(), &x.sampler()};
  auto& z_metered = s.make<MeteredCoin>(z, s.meter, kZQuoins);
  auto& x_metered = s.make<MeteredCoin>(x, s.meter, kXQuoins);

  auto& m = s.make<FunctionCoin>([&z_metered] { return diff_coin(z_metered); });
  auto& n = s.make<FunctionCoin>([&x_metered] { return diff_coin(x_metered); });
  const std::uint64_t rounds = options.max_rounds;
  const bool lazy = options.lazy_toss;
  auto& sc = s.make<FunctionCoin>([&m, rounds, lazy] { return race_coin(m, rounds, lazy); });
  auto& tc = s.make<FunctionCoin>([&n, rounds, lazy] { return race_coin(n, rounds, lazy); });
  s.root = &s.make<FunctionCoin>([&sc, &tc, rounds] { return ratio_coin(sc, tc, rounds); });
  s.structure = "ratio(race(diff(z_quoin)), race(diff(x_quoin)))";
  const double p = spec.p();
  s.target = 4.0 * p * (1.0 - p);
  return FactoryPipeline(std::move(impl));
}

namespace {

std::uint64_t validated_stream(double p, std::uint64_t stream) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("coin bias must lie in [0, 1], got " + std::to_string(p));
  }
  return stream;
}

}  // namespace

FactoryPipeline FactoryPipeline::classical_ft(double p, double eps1, const PipelineOptions& options,
                                              std::uint64_t seed, std::uint64_t stream) {
  auto impl = std::make_unique<Impl>(options, seed, validated_stream(p, stream));
  Impl& s = *impl;
  s.envelope.emplace(eps1 / 2.0);
  auto& src = s.make<BiasedSource>(p, seed, stream);
  auto& metered = s.make<MeteredCoin>(src, s.meter, kPCoins);
  const TruncatedDoublingEnvelope& env = *s.envelope;
  const std::uint64_t max_draws = options.max_draws;
  Philox4x32& aux = s.aux;
  s.root = &s.make<FunctionCoin>(
      [&metered, &env, &aux, max_draws] { return quoin::classical_ft(metered, env, aux, max_draws); });
  s.structure = "truncated_double(diff(p_coin))";
  s.target = classical_ft_target(p, eps1);
  return FactoryPipeline(std::move(impl));
}

FactoryPipeline FactoryPipeline::classical_qt(double p, double eps1, const PipelineOptions& options,
                                              std::uint64_t seed, std::uint64_t stream) {
  auto impl = std::make_unique<Impl>(options, seed, validated_stream(p, stream));
  Impl& s = *impl;
  s.envelope.emplace(eps1 / 2.0);
  auto& src = s.make<BiasedSource>(p, seed, stream);
  auto& metered = s.make<MeteredCoin>(src, s.meter, kPCoins);
  const TruncatedDoublingEnvelope& env = *s.envelope;
  const PipelineOptions opts = options;
  Philox4x32& aux = s.aux;
  s.root = &s.make<FunctionCoin>([&metered, &env, &aux, opts] { return quoin::classical_qt(metered, env, aux, opts); });
  s.structure = "or(half(p_coin), sqrt(truncated_double(diff(p_coin))))";
  s.target = classical_qt_target(p, eps1);
  return FactoryPipeline(std::move(impl));
}

Bit FactoryPipeline::toss() {
  impl_->meter.reset();
  return impl_->root->toss();
}

const ConsumptionMeter& FactoryPipeline::meter() const { return impl_->meter; }
const PipelineOptions& FactoryPipeline::options() const { return impl_->options; }
const std::string& FactoryPipeline::structure() const { return impl_->structure; }
std::optional<double> FactoryPipeline::target() const { return impl_->target; }

std::uint64_t FactoryPipeline::purification_rejections() const {
  std::uint64_t total = 0;
  for (const QuoinSampler* sampler : impl_->samplers) {
    total += sampler->purification_rejections();
  }
  return total;
}

}  // namespace quoin
