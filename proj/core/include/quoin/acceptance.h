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
#include <string>
#include <vector>

namespace quoin {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 0x5EED;
  unsigned workers = 1;
};

/// The acceptance criteria, each a self-contained check. Exceptions are caught
/// and reported as failures.
CriterionResult check_theory_table(const AcceptanceOptions& options);
CriterionResult check_ideal_protocol(const AcceptanceOptions& options);
CriterionResult check_noisy_reproduction(const AcceptanceOptions& options);
CriterionResult check_consumption(const AcceptanceOptions& options);
CriterionResult check_bound_arithmetic(const AcceptanceOptions& options);
CriterionResult check_epsilon_relation(const AcceptanceOptions& options);
CriterionResult check_oracle_suite(const AcceptanceOptions& options);
CriterionResult check_standard_error(const AcceptanceOptions& options);

/// All criteria in order 1..8.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS [n] name: detail" / "FAIL [n] name: detail".
std::string format_result(const CriterionResult& result);

}  // namespace quoin
