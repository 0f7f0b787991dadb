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

#include "hsched/exact_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hsched/text_util.h"

namespace hsched {
namespace {

constexpr double kObjectiveTolerance = 1e-12;

int64_t SaturatingAdd(int64_t a, int64_t b) {
  const int64_t max = std::numeric_limits<int64_t>::max();
  return a > max - b ? max : a + b;
}

int64_t SaturatingMul(int64_t a, int64_t b) {
  const int64_t max = std::numeric_limits<int64_t>::max();
  if (a != 0 && b > max / a) return max;
  return a * b;
}

// Depth-first enumeration with per-node state carried along the prefix.
class Enumerator {
 public:
  Enumerator(const Dataset& d, double alpha, std::vector<double> weights)
      : d_(d),
        weights_(std::move(weights)),
        required_(alpha * d.num_nodes() - 1e-9),
        used_(static_cast<size_t>(d.num_heuristics()), false) {
    NodeState root;
    root.cost.assign(static_cast<size_t>(d.num_nodes()), 0.0);
    root.solved.assign(static_cast<size_t>(d.num_nodes()), false);
    states_.push_back(std::move(root));
    for (int h = 0; h < d.num_heuristics(); ++h) {
      breakpoints_.push_back(Breakpoints(d, h));
    }
  }

  void Run() {
    Consider();
    Recurse();
  }

  std::optional<ExactResult> Result() const {
    if (!best_found_) return std::nullopt;
    ExactResult r;
    for (size_t i = 0; i < best_heuristics_.size(); ++i) {
      r.schedule.Append(d_.heuristics()[static_cast<size_t>(best_heuristics_[i])],
                        best_budgets_[i]);
    }
    r.objective = best_objective_;
    r.solved_nodes = best_solved_;
    r.schedules_enumerated = visited_;
    return r;
  }

 private:
  void Recurse() {
    for (int h = 0; h < d_.num_heuristics(); ++h) {
      if (used_[static_cast<size_t>(h)]) continue;
      for (int64_t budget : breakpoints_[static_cast<size_t>(h)]) {
        Push(h, budget);
        Consider();
        Recurse();
        Pop();
      }
    }
  }

  struct NodeState {
    std::vector<double> cost;  // accumulated cost per node, excluding penalty
    std::vector<bool> solved;
    int num_solved = 0;
  };

  // Each depth keeps its own copy so popping restores costs exactly.
  void Push(int h, int64_t budget) {
    used_[static_cast<size_t>(h)] = true;
    heuristics_.push_back(h);
    budgets_.push_back(budget);
    NodeState next = states_.back();
    const double w = weights_[static_cast<size_t>(h)];
    for (int n = 0; n < d_.num_nodes(); ++n) {
      const auto un = static_cast<size_t>(n);
      if (next.solved[un]) continue;
      const Iterations& tau = d_.tau(h, n);
      if (tau && *tau <= budget) {
        next.solved[un] = true;
        ++next.num_solved;
        next.cost[un] += w * static_cast<double>(*tau);
      } else {
        next.cost[un] += w * static_cast<double>(budget);
      }
    }
    states_.push_back(std::move(next));
  }

  void Pop() {
    used_[static_cast<size_t>(heuristics_.back())] = false;
    states_.pop_back();
    budgets_.pop_back();
    heuristics_.pop_back();
  }

  // Evaluates the current prefix as a complete schedule.
  void Consider() {
    ++visited_;
    const NodeState& state = states_.back();
    if (static_cast<double>(state.num_solved) < required_) return;
    double objective = 0.0;
    for (int n = 0; n < d_.num_nodes(); ++n) {
      const auto un = static_cast<size_t>(n);
      objective += state.solved[un] ? state.cost[un] : state.cost[un] + 1.0;
    }
    if (best_found_ && !Improves(objective)) return;
    best_found_ = true;
    best_objective_ = objective;
    best_solved_ = state.num_solved;
    best_heuristics_ = heuristics_;
    best_budgets_ = budgets_;
  }

  bool Improves(double objective) const {
    const double scale = std::max(1.0, std::abs(best_objective_));
    if (objective < best_objective_ - kObjectiveTolerance * scale) return true;
    if (objective > best_objective_ + kObjectiveTolerance * scale) return false;
    if (heuristics_.size() != best_heuristics_.size()) {
      return heuristics_.size() < best_heuristics_.size();
    }
    if (heuristics_ != best_heuristics_) return heuristics_ < best_heuristics_;
    return budgets_ < best_budgets_;
  }

  const Dataset& d_;
  std::vector<double> weights_;
  double required_;
  std::vector<std::vector<int64_t>> breakpoints_;

  std::vector<bool> used_;
  std::vector<int> heuristics_;
  std::vector<int64_t> budgets_;
  std::vector<NodeState> states_;
  int64_t visited_ = 0;

  bool best_found_ = false;
  double best_objective_ = 0.0;
  int best_solved_ = 0;
  std::vector<int> best_heuristics_;
  std::vector<int64_t> best_budgets_;
};

}  // namespace

int64_t CountCandidateSchedules(const Dataset& d) {
  // by_size[k] = number of ordered k-sequences of distinct heuristics with
  // budgets; built one heuristic at a time.
  const int H = d.num_heuristics();
  std::vector<int64_t> subsets(static_cast<size_t>(H) + 1, 0);  // unordered
  subsets[0] = 1;
  for (int h = 0; h < H; ++h) {
    const auto b = static_cast<int64_t>(Breakpoints(d, h).size());
    for (int k = h + 1; k >= 1; --k) {
      subsets[static_cast<size_t>(k)] = SaturatingAdd(
          subsets[static_cast<size_t>(k)],
          SaturatingMul(subsets[static_cast<size_t>(k) - 1], b));
    }
  }
  int64_t total = 0;
  int64_t factorial = 1;
  for (int k = 0; k <= H; ++k) {
    if (k > 0) factorial = SaturatingMul(factorial, k);
    total = SaturatingAdd(total,
                          SaturatingMul(subsets[static_cast<size_t>(k)], factorial));
  }
  return total;
}

std::optional<ExactResult> SolveExact(const Dataset& d, double alpha,
                                      const IterationCostProfile& costs,
                                      CostOptions opts,
                                      const ExactLimits& limits) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InputError("alpha must lie in [0, 1]");
  }
  if (limits.max_heuristics < 1 || limits.max_breakpoints_per_heuristic < 1 ||
      limits.enumeration_budget < 1) {
    throw InputError("exact search limits must be positive");
  }
  if (d.num_heuristics() > limits.max_heuristics) {
    throw InputError("max_heuristics exceeded: dataset has " +
                     std::to_string(d.num_heuristics()) + " heuristics, limit " +
                     std::to_string(limits.max_heuristics));
  }
  for (int h = 0; h < d.num_heuristics(); ++h) {
    const auto count = Breakpoints(d, h).size();
    if (count > static_cast<size_t>(limits.max_breakpoints_per_heuristic)) {
      throw InputError("max_breakpoints_per_heuristic exceeded: heuristic '" +
                       d.heuristics()[static_cast<size_t>(h)] + "' has " +
                       std::to_string(count) + " breakpoints, limit " +
                       std::to_string(limits.max_breakpoints_per_heuristic));
    }
  }
  const int64_t candidates = CountCandidateSchedules(d);
  if (candidates > limits.enumeration_budget) {
    throw InputError("enumeration_budget exceeded: " +
                     std::to_string(candidates) + " candidate schedules, limit " +
                     std::to_string(limits.enumeration_budget));
  }
  std::vector<double> weights(static_cast<size_t>(d.num_heuristics()), 1.0);
  if (opts.normalize) {
    for (int h = 0; h < d.num_heuristics(); ++h) {
      weights[static_cast<size_t>(h)] = costs[h];
    }
  }
  Enumerator e(d, alpha, std::move(weights));
  e.Run();
  return e.Result();
}

}  // namespace hsched
