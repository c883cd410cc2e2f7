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

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace quoin {

/// Exact rational arithmetic for the closed-form oracles where no root appears.
using Rational = boost::multiprecision::cpp_rational;

/// 50-significant-digit decimal used wherever a square root enters.
using ExactProb = boost::multiprecision::cpp_dec_float_50;

inline ExactProb to_exact(const Rational& r) {
  return ExactProb(boost::multiprecision::numerator(r)) / ExactProb(boost::multiprecision::denominator(r));
}

inline double to_double(const ExactProb& x) { return x.convert_to<double>(); }

}  // namespace quoin
