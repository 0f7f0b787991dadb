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

#include "hsched/schedule.h"

#include <algorithm>

#include "hsched/text_util.h"

namespace hsched {

Schedule::Schedule(std::vector<ScheduleEntry> entries) {
  for (auto& e : entries) Append(std::move(e.heuristic), e.budget);
}

void Schedule::Append(std::string heuristic, int64_t budget) {
  if (heuristic.empty()) throw InputError("schedule heuristic must be named");
  if (budget < 1) {
    throw InputError("budget for '" + heuristic + "' must be at least 1");
  }
  if (Contains(heuristic)) {
    throw InputError("heuristic '" + heuristic +
                     "' appears more than once in the schedule");
  }
  entries_.push_back({std::move(heuristic), budget});
}

void Schedule::ExtendLast(int64_t budget) {
  if (entries_.empty()) throw std::logic_error("ExtendLast on empty schedule");
  if (budget <= entries_.back().budget) {
    throw std::logic_error("extension must raise the budget");
  }
  entries_.back().budget = budget;
}

bool Schedule::Contains(std::string_view heuristic) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const ScheduleEntry& e) { return e.heuristic == heuristic; });
}

std::string ToString(const Schedule& s) {
  std::string out = "<";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ", ";
    out += "(" + s.entries()[i].heuristic + "," +
           std::to_string(s.entries()[i].budget) + ")";
  }
  return out + ">";
}

Schedule LoadSchedule(std::string_view csv) {
  Schedule s;
  bool header_seen = false;
  size_t row = 0;
  for (std::string_view line : SplitLines(csv)) {
    ++row;
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const std::string where = "schedule row " + std::to_string(row) + ": ";
    if (!header_seen) {
      if (trimmed != kScheduleHeader) {
        throw InputError(where + "expected header '" +
                         std::string(kScheduleHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = SplitFields(trimmed, ',');
    if (fields.size() != 3) throw InputError(where + "expected 3 fields");
    auto position = ParseInt64(fields[0]);
    if (!position || *position != static_cast<int64_t>(s.size()) + 1) {
      throw InputError(where + "positions must run 1..k contiguously");
    }
    auto budget = ParseInt64(fields[2]);
    if (!budget) throw InputError(where + "non-integer max_iterations");
    try {
      s.Append(std::string(Trim(fields[1])), *budget);
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
  }
  if (!header_seen) throw InputError("schedule is missing its header line");
  return s;
}

std::string ScheduleToCsv(const Schedule& s) {
  std::string out(kScheduleHeader);
  out += '\n';
  for (size_t i = 0; i < s.size(); ++i) {
    out += std::to_string(i + 1) + "," + s.entries()[i].heuristic + "," +
           std::to_string(s.entries()[i].budget) + "\n";
  }
  return out;
}

namespace {

struct ResolvedEntry {
  int heuristic;
  int64_t budget;
  double weight;
};

std::vector<ResolvedEntry> Resolve(const Schedule& s, const Dataset& d,
                                   const IterationCostProfile& costs,
                                   CostOptions opts) {
  std::vector<ResolvedEntry> out;
  out.reserve(s.size());
  for (const auto& e : s.entries()) {
    const int h = d.HeuristicIndex(e.heuristic);
    out.push_back({h, e.budget, opts.normalize ? costs[h] : 1.0});
  }
  return out;
}

NodeOutcome CostAt(const std::vector<ResolvedEntry>& entries, const Dataset& d,
                   int node) {
  NodeOutcome out;
  out.node = d.nodes()[static_cast<size_t>(node)];
  double cost = 0.0;
  for (size_t j = 0; j < entries.size(); ++j) {
    const auto& e = entries[j];
    const Iterations& tau = d.tau(e.heuristic, node);
    if (tau && *tau <= e.budget) {
      out.first_success_position = static_cast<int>(j) + 1;
      out.cost = cost + e.weight * static_cast<double>(*tau);
      return out;
    }
    cost += e.weight * static_cast<double>(e.budget);
  }
  out.cost = cost + 1.0;
  return out;
}

}  // namespace

NodeOutcome NodeCost(const Schedule& s, const Dataset& d,
                     std::string_view node, const IterationCostProfile& costs,
                     CostOptions opts) {
  const int n = d.NodeIndex(node);
  return CostAt(Resolve(s, d, costs, opts), d, n);
}

ScheduleEvaluation Evaluate(const Schedule& s, const Dataset& d, double alpha,
                            const IterationCostProfile& costs,
                            CostOptions opts) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InputError("alpha must lie in [0, 1]");
  }
  const auto entries = Resolve(s, d, costs, opts);
  ScheduleEvaluation ev;
  ev.alpha = alpha;
  ev.total_nodes = d.num_nodes();
  ev.per_node.reserve(static_cast<size_t>(d.num_nodes()));
  for (int n = 0; n < d.num_nodes(); ++n) {
    NodeOutcome o = CostAt(entries, d, n);
    ev.objective += o.cost;
    if (o.solved()) ++ev.solved_nodes;
    ev.per_node.push_back(std::move(o));
  }
  ev.success_rate = ev.total_nodes == 0
                        ? 0.0
                        : static_cast<double>(ev.solved_nodes) / ev.total_nodes;
  // Compared as counts; the slack absorbs rounding in alpha * |N|.
  ev.feasible = static_cast<double>(ev.solved_nodes) >=
                alpha * static_cast<double>(ev.total_nodes) - 1e-9;
  return ev;
}

std::string FormatEvaluation(const ScheduleEvaluation& e) {
  std::string out;
  out += "objective " + FormatNumber(e.objective) + "\n";
  out += "solved " + std::to_string(e.solved_nodes) + "/" +
         std::to_string(e.total_nodes) + "\n";
  out += "success_rate " + FormatNumber(e.success_rate) + "\n";
  out += "alpha " + FormatNumber(e.alpha) + "\n";
  out += std::string(e.feasible ? "FEASIBLE" : "INFEASIBLE") + "\n";
  return out;
}

}  // namespace hsched
