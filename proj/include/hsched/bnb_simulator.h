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

// Synthetic branch-and-bound environment. Nodes arrive as a linear stream;
// at each node a heuristic either succeeds after a latent number of
// iterations or fails, independently of the order in which heuristics are
// called. This lets us (a) collect shadow-mode datasets where every
// heuristic runs at every node and (b) replay a schedule's heuristic loop to
// obtain incumbent timelines.

#ifndef HSCHED_BNB_SIMULATOR_H_
#define HSCHED_BNB_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hsched/dataset.h"
#include "hsched/primal_metrics.h"
#include "hsched/schedule.h"
#include "hsched/sim_config.h"

namespace hsched {

struct LatentOutcome {
  bool succeeds = false;
  int64_t iterations_needed = 0;  // meaningful only if succeeds
  double objective_value = 0.0;   // of the solution found, if any
};

struct SimInstance {
  uint64_t seed = 0;
  std::vector<std::string> heuristics;
  std::vector<double> seconds_per_iteration;
  std::vector<int64_t> max_iterations;
  double node_interarrival_seconds = 0.0;
  double optimum_value = 0.0;
  std::vector<std::string> nodes;
  std::vector<std::vector<LatentOutcome>> outcomes;  // [node][heuristic]

  int HeuristicIndex(std::string_view name) const;  // -1 if unknown
};

// Mixes integers into a well-spread 64-bit seed (splitmix64 finalizer).
uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b = 0);

// Fully determined by (cfg, seed). Each latent outcome is drawn from a
// stream keyed by (seed, heuristic name, node), so reordering heuristics in
// the config does not change any draw. Node names are "s<seed>_n<k>".
SimInstance GenerateInstance(const SimConfig& cfg, uint64_t seed);

// Shadow-mode collection: every heuristic is recorded at every node. Failed
// calls execute max_iterations. Throws InputError on duplicate node names or
// mismatched heuristic universes.
Dataset CollectShadowDataset(std::span<const SimInstance> instances);

struct NodeRecord {
  std::string node;
  std::vector<std::pair<std::string, int64_t>> attempts;  // (heuristic, iterations)
  std::optional<int> success_position;  // 1-based, first improving success
  double seconds = 0.0;                  // heuristic time at this node
};

struct RunTrace {
  std::vector<NodeRecord> nodes;
  IncumbentTimeline timeline;
};

// Replays the heuristic loop under `s`. Each node costs the interarrival
// time plus iterations * seconds_per_iteration of every heuristic tried; a
// failing heuristic spends its full budget. The loop stops at the first
// success that improves the incumbent. Nodes starting at or after
// `time_limit` are not visited.
RunTrace RunWithSchedule(const SimInstance& inst, const Schedule& s,
                         double time_limit);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
  size_t count = 0;
};
MeanStd Summarize(std::span<const double> values);
std::string FormatMeanStd(const MeanStd& m);

struct SeedComparison {
  uint64_t seed = 0;
  double schedule_integral = 0.0;
  double baseline_integral = 0.0;
  double ratio = 0.0;
};

struct PolicyComparison {
  std::vector<SeedComparison> per_seed;
  MeanStd ratio;
};

// One instance per seed; compares primal integrals at `time_limit`.
PolicyComparison ComparePolicies(const SimConfig& cfg,
                                 std::span<const uint64_t> seeds,
                                 const Schedule& s, const Schedule& baseline,
                                 double time_limit);

std::string ComparisonToCsv(const PolicyComparison& c);
std::string FormatComparison(const PolicyComparison& c);

// Registration-order schedule with each heuristic at its largest breakpoint;
// heuristics that never succeed are left out.
Schedule DefaultBaseline(const Dataset& d);
// Same, without data: every heuristic at its max_iterations.
Schedule DefaultBaseline(const SimConfig& cfg);

}  // namespace hsched

#endif  // HSCHED_BNB_SIMULATOR_H_
