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

/// Binary coin outcome. Head is the computational-basis outcome |0>, tail is |1>.
enum class Bit : std::uint8_t { head = 0, tail = 1 };

constexpr bool is_head(Bit b) { return b == Bit::head; }

constexpr Bit flip(Bit b) { return b == Bit::head ? Bit::tail : Bit::head; }

constexpr Bit bit_from_head(bool head) { return head ? Bit::head : Bit::tail; }

constexpr char to_char(Bit b) { return b == Bit::head ? '0' : '1'; }

}  // namespace quoin
