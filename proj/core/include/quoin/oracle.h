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

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quoin::oracle {

/// Finite absorbing Markov chain with exact (or high-precision) arithmetic.
/// Transient states are numbered from 0; absorbing outcomes are small integer
/// labels. Every transition may carry a cost, and expected_cost() returns the
/// expected total cost accumulated before absorption.
template <class T>
class AbsorbingChain {
 public:
  std::size_t add_state() {
    rows_.emplace_back();
    return rows_.size() - 1;
  }

  void to_state(std::size_t from, std::size_t to, const T& prob, const T& cost = T(0)) {
    rows_.at(from).push_back({false, to, prob, cost});
  }

  void to_outcome(std::size_t from, std::size_t outcome, const T& prob, const T& cost = T(0)) {
    rows_.at(from).push_back({true, outcome, prob, cost});
  }

  /// Probability of ending in `outcome` when started from `from`.
  T absorption(std::size_t from, std::size_t outcome) const {
    return solve([&](const Edge& e) { return e.absorbing && e.target == outcome ? e.prob : T(0); })[from];
  }

  T expected_cost(std::size_t from) const {
    return solve([](const Edge& e) { return e.prob * e.cost; })[from];
  }

 private:
  struct Edge {
    bool absorbing;
    std::size_t target;
    T prob;
    T cost;
  };

  // Solves (I - Q) x = b with b_i = sum over edges of rhs(edge), by Gauss-Jordan
  // elimination with first-nonzero pivoting (exact for rationals).
  template <class Rhs>
  std::vector<T> solve(Rhs rhs) const {
    const std::size_t n = rows_.size();
    std::vector<std::vector<T>> a(n, std::vector<T>(n + 1, T(0)));
    for (std::size_t i = 0; i < n; ++i) {
      a[i][i] = T(1);
      for (const auto& e : rows_[i]) {
        if (!e.absorbing) {
          a[i][e.target] -= e.prob;
        }
        a[i][n] += rhs(e);
      }
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && a[pivot][col] == T(0)) {
        ++pivot;
      }
      if (pivot == n) {
        throw std::domain_error("chain has a closed class of transient states");
      }
      std::swap(a[pivot], a[col]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || a[r][col] == T(0)) {
          continue;
        }
        const T factor = a[r][col] / a[col][col];
        for (std::size_t c = col; c <= n; ++c) {
          a[r][c] -= factor * a[col][c];
        }
      }
    }
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = a[i][n] / a[i][i];
    }
    return x;
  }

  std::vector<std::vector<Edge>> rows_;
};

inline constexpr std::size_t kHead = 0;
inline constexpr std::size_t kTail = 1;

/// Head probability and expected input tosses of a derived coin.
template <class T>
struct CoinLaw {
  T head;
  T cost;
};

/// Two tosses of a p-coin, head iff they differ. Brute force over the four outcomes.
template <class T>
CoinLaw<T> diff(const T& p) {
  T head(0);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const T pa = a == 0 ? p : T(1) - p;
      const T pb = b == 0 ? p : T(1) - p;
      if (a != b) {
        head += pa * pb;
      }
    }
  }
  return {head, T(2)};
}

/// Von Neumann pairs, output the second toss of the first unequal pair.
template <class T>
CoinLaw<T> von_neumann(const T& p) {
  AbsorbingChain<T> chain;
  const auto start = chain.add_state();
  chain.to_state(start, start, p * p, T(2));
  chain.to_state(start, start, (T(1) - p) * (T(1) - p), T(2));
  chain.to_outcome(start, kTail, p * (T(1) - p), T(2));
  chain.to_outcome(start, kHead, (T(1) - p) * p, T(2));
  return {chain.absorption(start, kHead), chain.expected_cost(start)};
}

/// Race stage on an m-coin whose tosses each cost `unit` primitive draws.
template <class T>
CoinLaw<T> race(const T& m, const T& unit, bool lazy) {
  AbsorbingChain<T> chain;
  const auto first = chain.add_state();
  if (lazy) {
    const auto second = chain.add_state();
    chain.to_outcome(first, kTail, T(1) - m, unit);
    chain.to_state(first, second, m, unit);
    chain.to_outcome(second, kHead, T(1) - m, unit);
    chain.to_state(second, first, m, unit);
  } else {
    // Both tosses are always paid for.
    chain.to_outcome(first, kTail, (T(1) - m) * m, T(2) * unit);
    chain.to_outcome(first, kTail, (T(1) - m) * (T(1) - m), T(2) * unit);
    chain.to_outcome(first, kHead, m * (T(1) - m), T(2) * unit);
    chain.to_state(first, first, m * m, T(2) * unit);
  }
  return {chain.absorption(first, kHead), chain.expected_cost(first)};
}

/// Ratio stage: toss s then t; (H, T) -> head, (T, H) -> tail, else repeat.
template <class T>
CoinLaw<T> ratio(const CoinLaw<T>& s, const CoinLaw<T>& t) {
  AbsorbingChain<T> chain;
  const auto start = chain.add_state();
  const T round_cost = s.cost + t.cost;
  chain.to_outcome(start, kHead, s.head * (T(1) - t.head), round_cost);
  chain.to_outcome(start, kTail, (T(1) - s.head) * t.head, round_cost);
  chain.to_state(start, start, s.head * t.head + (T(1) - s.head) * (T(1) - t.head), round_cost);
  return {chain.absorption(start, kHead), chain.expected_cost(start)};
}

/// Whole quoin protocol given the Z-basis and X-basis head probabilities.
/// Cost is in quoins.
template <class T>
CoinLaw<T> quantum_protocol(const T& z_head, const T& x_head, bool lazy) {
  const auto m = diff(z_head);
  const auto n = diff(x_head);
  return ratio(race(m.head, m.cost, lazy), race(n.head, n.cost, lazy));
}

}  // namespace quoin::oracle
