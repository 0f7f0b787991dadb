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

#include "hsched/crossval.h"

#include <algorithm>
#include <cstdio>

#include "hsched/greedy.h"
#include "hsched/primal_metrics.h"
#include "hsched/text_util.h"

namespace hsched {
namespace {

std::vector<std::string> SortedNames(const SimConfig& cfg) {
  std::vector<std::string> names;
  for (const auto& h : cfg.heuristics) names.push_back(h.name);
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

uint64_t InstanceSeed(uint64_t base, size_t config_index, int instance) {
  return DeriveSeed(base, config_index + 1, static_cast<uint64_t>(instance));
}

CrossValReport CrossValidate(const std::vector<LabeledConfig>& configs,
                             const CrossValOptions& opts) {
  if (configs.size() < 2) throw InputError("crossval needs at least two configs");
  if (opts.folds < 2) throw InputError("crossval needs at least two folds");
  const auto universe = SortedNames(configs.front().config);
  for (const auto& lc : configs) {
    lc.config.Validate();
    if (opts.folds > lc.config.instances) {
      throw InputError("fold count " + std::to_string(opts.folds) +
                       " exceeds the " + std::to_string(lc.config.instances) +
                       " instances of config '" + lc.label + "'");
    }
    if (SortedNames(lc.config) != universe) {
      throw InputError("config '" + lc.label +
                       "' does not share the heuristic universe of '" +
                       configs.front().label + "'");
    }
  }

  // Instances per config, generated once.
  std::vector<std::vector<SimInstance>> instances(configs.size());
  for (size_t c = 0; c < configs.size(); ++c) {
    for (int i = 0; i < configs[c].config.instances; ++i) {
      instances[c].push_back(
          GenerateInstance(configs[c].config, InstanceSeed(opts.seed, c, i)));
    }
  }

  CrossValReport report;
  const size_t k = configs.size();
  report.cells.assign(k, std::vector<MeanStd>(k));
  report.baseline.assign(k, MeanStd{});
  for (const auto& lc : configs) report.labels.push_back(lc.label);

  for (size_t train = 0; train < k; ++train) {
    // Schedules depend only on (train config, fold).
    std::vector<Schedule> learned, baselines;
    for (int f = 0; f < opts.folds; ++f) {
      std::vector<SimInstance> subset;
      for (size_t i = 0; i < instances[train].size(); ++i) {
        if (static_cast<int>(i) % opts.folds != f) subset.push_back(instances[train][i]);
      }
      const Dataset data = CollectShadowDataset(subset);
      GreedyOptions g;
      g.normalize_costs = opts.normalize_costs;
      learned.push_back(BuildSchedule(data, g).schedule);
      baselines.push_back(DefaultBaseline(data));
    }
    for (size_t test = 0; test < k; ++test) {
      const double limit =
          opts.time_limit.value_or(configs[test].config.time_limit_seconds);
      std::vector<double> ratios, base_values;
      for (size_t i = 0; i < instances[test].size(); ++i) {
        const auto f = static_cast<size_t>(static_cast<int>(i) % opts.folds);
        const SimInstance& inst = instances[test][i];
        const double p_learned =
            PrimalIntegral(RunWithSchedule(inst, learned[f], limit).timeline, limit);
        const double p_base =
            PrimalIntegral(RunWithSchedule(inst, baselines[f], limit).timeline, limit);
        ratios.push_back(p_base > 0 ? p_learned / p_base : 1.0);
        base_values.push_back(p_base);
      }
      report.cells[train][test] = Summarize(ratios);
      if (train == test) report.baseline[test] = Summarize(base_values);
    }
  }
  return report;
}

std::string FormatCrossVal(const CrossValReport& r) {
  size_t width = 12;
  for (const auto& l : r.labels) width = std::max(width, l.size() + 2);
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : r.cells) {
    std::vector<std::string> cr;
    for (const auto& c : row) cr.push_back(FormatMeanStd(c));
    cells.push_back(std::move(cr));
  }
  std::vector<std::string> base;
  for (const auto& b : r.baseline) base.push_back(FormatMeanStd(b));
  size_t cell_width = 12;
  for (const auto& row : cells) {
    for (const auto& c : row) cell_width = std::max(cell_width, c.size() + 2);
  }
  for (const auto& b : base) cell_width = std::max(cell_width, b.size() + 2);

  auto pad = [](std::string s, size_t w) {
    // "±" is two bytes but one column.
    size_t columns = 0;
    for (unsigned char ch : s) columns += (ch & 0xC0) != 0x80;
    if (columns < w) s.append(w - columns, ' ');
    return s;
  };
  std::string out = "relative primal integral (mean ± std), rows: train, columns: test\n";
  out += pad("train\\test", width);
  for (const auto& l : r.labels) out += pad(l, cell_width);
  out += "\n";
  for (size_t i = 0; i < cells.size(); ++i) {
    out += pad(r.labels[i], width);
    for (const auto& c : cells[i]) out += pad(c, cell_width);
    out += "\n";
  }
  out += pad("baseline P(T)", width);
  for (const auto& b : base) out += pad(b, cell_width);
  out += "\n";
  // Strip trailing spaces per line.
  std::string trimmed;
  for (auto line : SplitLines(out)) trimmed += std::string(Trim(line)) + "\n";
  return trimmed;
}

std::string CrossValToCsv(const CrossValReport& r) {
  std::string out = "train,test,mean_ratio,std_ratio,count\n";
  for (size_t i = 0; i < r.cells.size(); ++i) {
    for (size_t j = 0; j < r.cells[i].size(); ++j) {
      const auto& c = r.cells[i][j];
      out += r.labels[i] + "," + r.labels[j] + "," + FormatNumber(c.mean) + "," +
             FormatNumber(c.stddev) + "," + std::to_string(c.count) + "\n";
    }
  }
  for (size_t j = 0; j < r.baseline.size(); ++j) {
    const auto& b = r.baseline[j];
    out += "baseline," + r.labels[j] + "," + FormatNumber(b.mean) + "," +
           FormatNumber(b.stddev) + "," + std::to_string(b.count) + "\n";
  }
  return out;
}

}  // namespace hsched
