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

#ifndef HSCHED_SIM_CONFIG_H_
#define HSCHED_SIM_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hsched {

enum class HeuristicClass { kDiving, kLns };

struct HeuristicSpec {
  std::string name;
  HeuristicClass cls = HeuristicClass::kDiving;
  double success_probability = 0.5;
  // Per-iteration success rate of the truncated geometric iteration law.
  double geometric_rate = 0.2;
  int64_t max_iterations = 50;
  double seconds_per_iteration = 0.01;
  // Mean of the exponential relative gap of a found solution to the optimum.
  double quality_gap_mean = 0.1;
};

// Synthetic branch-and-bound workload.
//
// File format: one `key = value` per line, '#' comments. Global keys:
//   instances, nodes_min, nodes_max, node_interarrival_seconds,
//   optimum_value, time_limit_seconds
// Heuristic keys, one block per heuristic in declaration order:
//   heuristic.<name>.class                 diving | lns
//   heuristic.<name>.success_probability   [0, 1]
//   heuristic.<name>.geometric_rate        (0, 1]
//   heuristic.<name>.max_iterations        >= 1
//   heuristic.<name>.seconds_per_iteration > 0
//   heuristic.<name>.quality_gap_mean      >= 0
struct SimConfig {
  std::vector<HeuristicSpec> heuristics;
  int nodes_min = 50;
  int nodes_max = 50;
  int instances = 4;
  double node_interarrival_seconds = 0.5;
  double optimum_value = 100.0;
  double time_limit_seconds = 60.0;

  // Throws InputError on any out-of-range value.
  void Validate() const;
  int HeuristicIndex(std::string_view name) const;  // -1 if unknown
};

SimConfig ParseSimConfig(std::string_view text);
std::string SimConfigToText(const SimConfig& cfg);

}  // namespace hsched

#endif  // HSCHED_SIM_CONFIG_H_
