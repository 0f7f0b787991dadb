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

#include "hsched/greedy.h"

#include <algorithm>
#include <cmath>

#include "hsched/text_util.h"

namespace hsched {
namespace {

// Relative tolerance under which two ratios count as tied.
constexpr double kRatioTieTolerance = 1e-12;

// -1 if a is strictly better than b, +1 if b is strictly better, 0 if tied.
int CompareRatios(const GreedyAction& a, const GreedyAction& b) {
  const double lhs = a.newly_solved * b.cost;
  const double rhs = b.newly_solved * a.cost;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (std::abs(lhs - rhs) <= kRatioTieTolerance * scale) return 0;
  return lhs > rhs ? -1 : 1;
}

bool Better(const GreedyAction& a, const GreedyAction& b) {
  if (int c = CompareRatios(a, b); c != 0) return c < 0;
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.heuristic != b.heuristic) return a.heuristic < b.heuristic;
  return a.budget < b.budget;
}

}  // namespace

std::optional<GreedyAction> BestAction(const Dataset& d,
                                       const std::vector<bool>& unsolved,
                                       const std::vector<bool>& scheduled,
                                       std::optional<LastEntry> last,
                                       const IterationCostProfile& costs,
                                       bool allow_extension) {
  std::optional<GreedyAction> best;
  std::vector<int64_t> open_taus;
  for (int h = 0; h < d.num_heuristics(); ++h) {
    const bool is_last = last && last->heuristic == h;
    const bool fresh = !scheduled[static_cast<size_t>(h)];
    if (!fresh && !(is_last && allow_extension)) continue;

    open_taus.clear();
    for (int n = 0; n < d.num_nodes(); ++n) {
      if (!unsolved[static_cast<size_t>(n)]) continue;
      if (const auto& tau = d.tau(h, n)) open_taus.push_back(*tau);
    }
    if (open_taus.empty()) continue;
    std::sort(open_taus.begin(), open_taus.end());

    const int64_t base = fresh ? 0 : last->budget;
    size_t covered = 0;
    for (int64_t tau : Breakpoints(d, h)) {
      while (covered < open_taus.size() && open_taus[covered] <= tau) ++covered;
      if (tau <= base || covered == 0) continue;
      GreedyAction a;
      a.heuristic = h;
      a.budget = tau;
      a.newly_solved = static_cast<int>(covered);
      a.cost = costs[h] * static_cast<double>(tau - base);
      a.extension = !fresh;
      if (!best || Better(a, *best)) best = a;
    }
  }
  return best;
}

GreedyResult BuildSchedule(const Dataset& d, const GreedyOptions& opts) {
  if (d.num_heuristics() == 0 || d.num_nodes() == 0) {
    throw InputError("cannot build a schedule from an empty dataset");
  }
  if (!(opts.alpha_report >= 0.0 && opts.alpha_report <= 1.0)) {
    throw InputError("alpha must lie in [0, 1]");
  }
  GreedyResult result;
  result.costs = opts.normalize_costs
                     ? AverageIterationCost(d)
                     : IterationCostProfile::Uniform(d.num_heuristics());
  result.warnings = result.costs.warnings;

  std::vector<bool> unsolved(static_cast<size_t>(d.num_nodes()), true);
  std::vector<bool> scheduled(static_cast<size_t>(d.num_heuristics()), false);
  int remaining = d.num_nodes();
  std::optional<LastEntry> last;

  while (remaining > 0) {
    auto action = BestAction(d, unsolved, scheduled, last, result.costs,
                             opts.allow_extension);
    if (!action) break;
    const std::string& name = d.heuristics()[static_cast<size_t>(action->heuristic)];
    if (action->extension) {
      result.schedule.ExtendLast(action->budget);
    } else {
      result.schedule.Append(name, action->budget);
      scheduled[static_cast<size_t>(action->heuristic)] = true;
    }
    last = LastEntry{action->heuristic, action->budget};
    for (int n = 0; n < d.num_nodes(); ++n) {
      const auto& tau = d.tau(action->heuristic, n);
      if (unsolved[static_cast<size_t>(n)] && tau && *tau <= action->budget) {
        unsolved[static_cast<size_t>(n)] = false;
        --remaining;
      }
    }
    result.trace.push_back({name, action->budget, action->newly_solved,
                            action->cost, action->ratio(), action->extension});
  }

  result.evaluation = Evaluate(result.schedule, d, opts.alpha_report,
                               result.costs, {opts.normalize_costs});
  result.alpha_met = result.evaluation.feasible;
  if (!result.alpha_met) {
    result.warnings.push_back(
        "greedy schedule reaches success rate " +
        FormatNumber(result.evaluation.success_rate) + " < alpha " +
        FormatNumber(opts.alpha_report));
  }
  return result;
}

std::string FormatTrace(const std::vector<GreedyStep>& trace) {
  std::string out;
  for (size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace[i];
    out += "step " + std::to_string(i + 1) + ": " + s.heuristic + " budget " +
           std::to_string(s.budget) + (s.extension ? " (extend)" : "") +
           " solved " + std::to_string(s.newly_solved) + " cost " +
           FormatNumber(s.marginal_cost) + " ratio " + FormatNumber(s.ratio) +
           "\n";
  }
  return out;
}

}  // namespace hsched
