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

#include <array>
#include <cstdint>

namespace quoin {

/// Counter-based Philox4x32-10 generator (Salmon et al., SC'11).
///
/// Word i of a generator keyed by (seed, stream) is a pure function of
/// (seed, stream, i): the 32-bit words of block b = i / 4 come from encrypting
/// the counter (b, stream) under the key seed. Any draw can be replayed, and
/// shards keyed by distinct stream ids never overlap. Satisfies
/// UniformRandomBitGenerator with 64-bit results (two consecutive words).
class Philox4x32 {
 public:
  using result_type = std::uint64_t;
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  /// The raw 10-round bijection.
  static Counter block(Counter ctr, Key key);

  explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next32() {
    if (cursor_ == kBufferWords) {
      refill();
    }
    return buffer_[cursor_++];
  }

  result_type operator()() {
    const std::uint64_t lo = next32();
    return (static_cast<std::uint64_t>(next32()) << 32) | lo;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Number of 32-bit words consumed so far.
  std::uint64_t position() const { return next_block_ * 4 - (kBufferWords - cursor_); }
  void seek(std::uint64_t word_index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  static constexpr std::size_t kBlocks = 8;
  static constexpr std::size_t kBufferWords = kBlocks * 4;

  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  Key key_;
  std::uint64_t next_block_ = 0;
  std::size_t cursor_ = kBufferWords;
  std::array<std::uint32_t, kBufferWords> buffer_{};
};

/// Stream id for shard `shard` of logical stream `tag`.
constexpr std::uint64_t shard_stream(std::uint32_t tag, std::uint32_t shard) {
  return (static_cast<std::uint64_t>(tag) << 32) | shard;
}

}  // namespace quoin
