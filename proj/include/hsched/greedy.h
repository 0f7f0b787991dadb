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

// Greedy construction of heuristic schedules. Each step picks the action
// (heuristic, budget) with the largest ratio of newly solved nodes to
// marginal cost. In the modified variant the last scheduled heuristic may
// also be extended to a larger budget, paying only for the extra iterations.

#ifndef HSCHED_GREEDY_H_
#define HSCHED_GREEDY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsched/dataset.h"
#include "hsched/schedule.h"

namespace hsched {

struct GreedyOptions {
  bool allow_extension = true;
  bool normalize_costs = false;
  // Coverage level that is reported against, never enforced.
  double alpha_report = 0.0;
};

struct GreedyAction {
  int heuristic = -1;
  int64_t budget = 0;
  int newly_solved = 0;
  double cost = 0.0;  // marginal cost c(h, budget)
  bool extension = false;

  double ratio() const { return newly_solved / cost; }
};

// Last entry of the partial schedule, if any.
struct LastEntry {
  int heuristic;
  int64_t budget;
};

// Scans the action set: every heuristic not yet scheduled at each of its
// breakpoints, plus (when `allow_extension`) the last scheduled heuristic at
// breakpoints strictly above its current budget. `unsolved` and `scheduled`
// are indexed by node and heuristic respectively; `costs` holds the
// per-iteration weights. Returns std::nullopt when no action solves a new
// node.
//
// Ties on the ratio go to the smaller marginal cost, then the earlier
// registered heuristic, then the smaller budget.
std::optional<GreedyAction> BestAction(const Dataset& d,
                                       const std::vector<bool>& unsolved,
                                       const std::vector<bool>& scheduled,
                                       std::optional<LastEntry> last,
                                       const IterationCostProfile& costs,
                                       bool allow_extension);

struct GreedyStep {
  std::string heuristic;
  int64_t budget = 0;
  int newly_solved = 0;
  double marginal_cost = 0.0;
  double ratio = 0.0;
  bool extension = false;
};

struct GreedyResult {
  Schedule schedule;
  std::vector<GreedyStep> trace;
  ScheduleEvaluation evaluation;
  IterationCostProfile costs;
  bool alpha_met = false;
  std::vector<std::string> warnings;
};

// Throws InputError if the dataset has no heuristics or no nodes.
GreedyResult BuildSchedule(const Dataset& d, const GreedyOptions& opts = {});

// One line per step: heuristic, budget, solved, cost, ratio.
std::string FormatTrace(const std::vector<GreedyStep>& trace);

}  // namespace hsched

#endif  // HSCHED_GREEDY_H_
