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
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "quoin/analysis.h"

namespace quoin {

/// One preparation angle of a protocol run.
struct SimulateRow {
  double theta_deg = 0.0;
  BiasEstimate p;  ///< Z-basis quoins
  BiasEstimate q;  ///< X-basis quoins
  TheoryRow theory;
  BiasEstimate f;  ///< protocol outputs
  double mean_quoins_per_f = 0.0;
  std::map<std::string, double> mean_per_step;
  std::uint64_t cutoffs = 0;
  std::uint64_t purification_rejections = 0;
};

struct SimulateReport {
  std::uint64_t seed = 0;
  std::vector<SimulateRow> rows;
  std::vector<std::string> warnings;
};

/// One bias of a classical construction.
struct ClassicalRow {
  std::string construction;
  double p = 0.0;
  double target = 0.0;
  BiasEstimate bias;
  double z = 0.0;
  double mean_coins = 0.0;
  std::uint64_t median_coins = 0;
  std::uint64_t q90_coins = 0;
  std::uint64_t q99_coins = 0;
  std::uint64_t max_coins = 0;
  std::uint64_t cutoffs = 0;
};

struct ClassicalReport {
  std::uint64_t seed = 0;
  double eps1 = 0.0;
  double eps1p = 0.0;
  std::vector<ClassicalRow> rows;
  std::vector<std::string> warnings;
};

struct BoundRow {
  double eps1p = 0.0;
  double n = 0.0;
  double bound = 0.0;
};

struct MinNRow {
  double eps1p = 0.0;
  CoinBudget budget;
  /// Classical f_t cost figure, two p-coins per g(p)-coin: 2 * approximation.
  double ft_cost = 0.0;
};

struct BoundsReport {
  std::vector<BoundRow> rows;
  std::vector<MinNRow> min_n;
};

/// CSV header of the protocol table.
inline constexpr const char* kSimulateCsvHeader =
    "theta_deg,p_hat,n_p,q_th,q_exp,f_th,f_exp,n_f,mean_quoins_per_f";
inline constexpr const char* kClassicalCsvHeader =
    "construction,p,target,n,bias,std_err,z,mean_coins,median_coins,q90_coins,q99_coins,max_coins,cutoffs";
inline constexpr const char* kBoundsCsvHeader = "kind,eps1p,n,bound";

void write_csv(std::ostream& out, const SimulateReport& report);
void write_csv(std::ostream& out, const ClassicalReport& report);
void write_csv(std::ostream& out, const BoundsReport& report);

void write_json(std::ostream& out, const SimulateReport& report);
void write_json(std::ostream& out, const ClassicalReport& report);
void write_json(std::ostream& out, const BoundsReport& report);

/// Plot data: one block per curve, "# <name>" then "x y" lines, blocks
/// separated by a blank line.
void write_plot(std::ostream& out, const SimulateReport& report);
void write_plot(std::ostream& out, const ClassicalReport& report);
void write_plot(std::ostream& out, const BoundsReport& report);

}  // namespace quoin
