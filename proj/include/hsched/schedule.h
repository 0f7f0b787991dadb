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

#ifndef HSCHED_SCHEDULE_H_
#define HSCHED_SCHEDULE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsched/dataset.h"

namespace hsched {

struct ScheduleEntry {
  std::string heuristic;
  int64_t budget = 1;  // iteration limit

  bool operator==(const ScheduleEntry&) const = default;
};

// Ordered (heuristic, iteration budget) pairs executed at every node until
// the first success. A heuristic appears at most once.
class Schedule {
 public:
  Schedule() = default;
  // Throws InputError if a heuristic repeats or a budget is below 1.
  explicit Schedule(std::vector<ScheduleEntry> entries);

  void Append(std::string heuristic, int64_t budget);
  // Replaces the budget of the last entry (used for greedy extensions).
  void ExtendLast(int64_t budget);

  const std::vector<ScheduleEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool Contains(std::string_view heuristic) const;

  bool operator==(const Schedule&) const = default;

 private:
  std::vector<ScheduleEntry> entries_;
};

// Readable one-line form, e.g. "<(h1,1), (h2,3)>".
std::string ToString(const Schedule& s);

inline constexpr std::string_view kScheduleHeader =
    "position,heuristic,max_iterations";

Schedule LoadSchedule(std::string_view csv);
std::string ScheduleToCsv(const Schedule& s);

struct NodeOutcome {
  std::string node;
  std::optional<int> first_success_position;  // 1-based
  double cost = 0.0;

  bool solved() const { return first_success_position.has_value(); }
  bool operator==(const NodeOutcome&) const = default;
};

struct ScheduleEvaluation {
  double objective = 0.0;
  int solved_nodes = 0;
  int total_nodes = 0;
  double success_rate = 0.0;
  double alpha = 0.0;
  bool feasible = false;  // success_rate >= alpha
  std::vector<NodeOutcome> per_node;
};

struct CostOptions {
  // Weights each iteration of heuristic h by its average seconds per
  // iteration. The unsolved-node penalty stays +1 in either mode.
  bool normalize = false;
};

// Time spent by the schedule at one node. Throws InputError for an unknown
// node or a schedule heuristic the dataset does not know.
NodeOutcome NodeCost(const Schedule& s, const Dataset& d,
                     std::string_view node, const IterationCostProfile& costs,
                     CostOptions opts = {});

// Aggregates NodeCost over every node in registration order.
ScheduleEvaluation Evaluate(const Schedule& s, const Dataset& d, double alpha,
                            const IterationCostProfile& costs,
                            CostOptions opts = {});

std::string FormatEvaluation(const ScheduleEvaluation& e);

}  // namespace hsched

#endif  // HSCHED_SCHEDULE_H_
