// Copyright 2026 The hsched Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HSCHED_EXACT_ORACLE_H_
#define HSCHED_EXACT_ORACLE_H_

#include <cstdint>
#include <optional>

#include "hsched/dataset.h"
#include "hsched/schedule.h"

namespace hsched {

// Guards on the exhaustive search; the scheduling problem is NP-hard.
struct ExactLimits {
  int max_heuristics = 6;
  int max_breakpoints_per_heuristic = 8;
  int64_t enumeration_budget = 20'000'000;
};

struct ExactResult {
  Schedule schedule;
  double objective = 0.0;
  int solved_nodes = 0;
  int64_t schedules_enumerated = 0;
};

// Number of schedules SolveExact would visit: every ordered subset of the
// heuristics, each with a budget drawn from its breakpoints, plus the empty
// schedule.
int64_t CountCandidateSchedules(const Dataset& d);

// Minimum-cost schedule among those solving at least alpha * |N| nodes, or
// std::nullopt if none does. Ties go to fewer entries, then the
// lexicographically smaller heuristic sequence (registration order), then
// smaller budgets. Throws InputError naming the violated limit.
std::optional<ExactResult> SolveExact(const Dataset& d, double alpha,
                                      const IterationCostProfile& costs,
                                      CostOptions opts = {},
                                      const ExactLimits& limits = {});

}  // namespace hsched

#endif  // HSCHED_EXACT_ORACLE_H_
