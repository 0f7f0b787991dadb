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

// Training data for heuristic scheduling: for every (heuristic, node) pair
// the number of iterations the heuristic needed to find a feasible solution
// at that branch-and-bound node, or a failure marker.

#ifndef HSCHED_DATASET_H_
#define HSCHED_DATASET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hsched {

// Iterations-to-solution; std::nullopt encodes a failed call.
using Iterations = std::optional<int64_t>;

struct Observation {
  std::string heuristic;
  std::string node;
  Iterations iterations_to_solution;
  int64_t iterations_executed = 0;
  std::optional<double> duration_seconds;

  bool succeeded() const { return iterations_to_solution.has_value(); }
};

// One (heuristic, node) cell of the dense data matrix. Cells without an
// observation behave as a failure with zero executed iterations.
struct Cell {
  bool observed = false;
  Iterations tau;
  int64_t iterations_executed = 0;
  std::optional<double> duration_seconds;
};

// Immutable once populated. Heuristics and nodes are kept in registration
// order, which also drives every deterministic tie-break downstream.
class Dataset {
 public:
  Dataset() = default;

  // Registers a name if it is new and returns its index.
  int AddHeuristic(std::string_view name);
  int AddNode(std::string_view name);

  // Validates and stores an observation, registering unseen names.
  // Throws InputError on invariant violations.
  void AddObservation(Observation obs);

  int num_heuristics() const { return static_cast<int>(heuristics_.size()); }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const std::vector<std::string>& heuristics() const { return heuristics_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Observation>& observations() const { return observations_; }

  // Throws InputError for unknown names.
  int HeuristicIndex(std::string_view name) const;
  int NodeIndex(std::string_view name) const;
  std::optional<int> FindHeuristic(std::string_view name) const;
  std::optional<int> FindNode(std::string_view name) const;

  const Cell& cell(int heuristic, int node) const {
    return cells_[static_cast<size_t>(heuristic)][static_cast<size_t>(node)];
  }
  const Iterations& tau(int heuristic, int node) const {
    return cell(heuristic, node).tau;
  }

 private:
  void EnsureShape();

  std::vector<std::string> heuristics_;
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, int> heuristic_index_;
  std::unordered_map<std::string, int> node_index_;
  std::vector<Observation> observations_;
  // cells_[h][n]
  std::vector<std::vector<Cell>> cells_;
};

inline constexpr std::string_view kDatasetHeader =
    "heuristic,node,iterations_to_solution,iterations_executed,"
    "duration_seconds";

// Parses the dataset CSV. Lines starting with '#' and blank lines are
// skipped. Throws InputError naming the offending row.
Dataset LoadDataset(std::string_view csv);

// Inverse of LoadDataset; observations are written in insertion order.
std::string DatasetToCsv(const Dataset& d);

// Average seconds per iteration of each heuristic, indexed like
// Dataset::heuristics().
struct IterationCostProfile {
  std::vector<double> seconds_per_iteration;
  std::vector<std::string> warnings;

  double operator[](int heuristic) const {
    return seconds_per_iteration[static_cast<size_t>(heuristic)];
  }
  static IterationCostProfile Uniform(int num_heuristics);
};

// Sum of durations over sum of executed iterations, restricted to the calls
// that carry a duration. Failed calls are included. Falls back to 1.0 when a
// heuristic has no usable duration data.
IterationCostProfile AverageIterationCost(const Dataset& d);

// Sorted distinct finite iterations-to-solution values of a heuristic.
std::vector<int64_t> Breakpoints(const Dataset& d, int heuristic);
std::vector<int64_t> Breakpoints(const Dataset& d, std::string_view heuristic);

}  // namespace hsched

#endif  // HSCHED_DATASET_H_
