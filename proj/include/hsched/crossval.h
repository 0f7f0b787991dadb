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

#ifndef HSCHED_CROSSVAL_H_
#define HSCHED_CROSSVAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsched/bnb_simulator.h"
#include "hsched/sim_config.h"

namespace hsched {

struct LabeledConfig {
  std::string label;
  SimConfig config;
};

struct CrossValOptions {
  int folds = 2;
  uint64_t seed = 0;
  // Overrides every config's time_limit_seconds when set.
  std::optional<double> time_limit;
  bool normalize_costs = true;
};

struct CrossValReport {
  std::vector<std::string> labels;
  // cells[train][test]: relative primal integral (greedy / baseline) pooled
  // over all folds and test instances.
  std::vector<std::vector<MeanStd>> cells;
  // Absolute baseline primal integral per test config (diagonal runs).
  std::vector<MeanStd> baseline;
};

// Seed of instance `i` of config `c`.
uint64_t InstanceSeed(uint64_t base, size_t config_index, int instance);

// For every (train, test) pair and fold f: collect a shadow dataset on the
// train config's instances outside fold f, build the greedy schedule, and
// compare it against DefaultBaseline(train data) on the test config's
// instances in fold f. Instance i belongs to fold i % folds.
CrossValReport CrossValidate(const std::vector<LabeledConfig>& configs,
                             const CrossValOptions& opts);

std::string FormatCrossVal(const CrossValReport& r);
std::string CrossValToCsv(const CrossValReport& r);

}  // namespace hsched

#endif  // HSCHED_CROSSVAL_H_
