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

#include "hsched/bnb_simulator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_set>

#include "hsched/text_util.h"

namespace hsched {
namespace {

// Uniform double in [0, 1) from the top 53 bits of the engine output.
double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Truncated geometric on {1, ..., max}: the number of iterations until the
// first per-iteration success, conditioned on success within max.
int64_t TruncatedGeometric(double u, double rate, int64_t max) {
  if (rate >= 1.0) return 1;
  const double log_fail = std::log1p(-rate);
  const double mass = -std::expm1(static_cast<double>(max) * log_fail);
  const double k = std::ceil(std::log1p(-u * mass) / log_fail);
  return std::clamp<int64_t>(static_cast<int64_t>(k), 1, max);
}

}  // namespace

uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b) {
  auto mix = [](uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ a) ^ b);
}

int SimInstance::HeuristicIndex(std::string_view name) const {
  for (size_t i = 0; i < heuristics.size(); ++i) {
    if (heuristics[i] == name) return static_cast<int>(i);
  }
  return -1;
}

SimInstance GenerateInstance(const SimConfig& cfg, uint64_t seed) {
  cfg.Validate();
  SimInstance inst;
  inst.seed = seed;
  inst.node_interarrival_seconds = cfg.node_interarrival_seconds;
  inst.optimum_value = cfg.optimum_value;
  for (const auto& h : cfg.heuristics) {
    inst.heuristics.push_back(h.name);
    inst.seconds_per_iteration.push_back(h.seconds_per_iteration);
    inst.max_iterations.push_back(h.max_iterations);
  }

  std::mt19937_64 size_rng(DeriveSeed(seed, 0));
  const int span = cfg.nodes_max - cfg.nodes_min + 1;
  const int num_nodes =
      cfg.nodes_min +
      std::min(span - 1, static_cast<int>(Uniform01(size_rng) * span));

  const double scale = cfg.optimum_value == 0.0 ? 1.0 : std::abs(cfg.optimum_value);
  std::vector<uint64_t> name_keys;
  for (const auto& h : cfg.heuristics) name_keys.push_back(Fnv1a64(h.name));

  for (int k = 1; k <= num_nodes; ++k) {
    inst.nodes.push_back("s" + std::to_string(seed) + "_n" + std::to_string(k));
    std::vector<LatentOutcome> row;
    row.reserve(cfg.heuristics.size());
    for (size_t h = 0; h < cfg.heuristics.size(); ++h) {
      const HeuristicSpec& spec = cfg.heuristics[h];
      std::mt19937_64 rng(DeriveSeed(seed, name_keys[h], static_cast<uint64_t>(k)));
      const double u_success = Uniform01(rng);
      const double u_iterations = Uniform01(rng);
      const double u_quality = Uniform01(rng);
      LatentOutcome o;
      o.succeeds = u_success < spec.success_probability;
      if (o.succeeds) {
        o.iterations_needed =
            TruncatedGeometric(u_iterations, spec.geometric_rate, spec.max_iterations);
        const double gap = -spec.quality_gap_mean * std::log1p(-u_quality);
        o.objective_value = cfg.optimum_value + scale * gap;
      }
      row.push_back(o);
    }
    inst.outcomes.push_back(std::move(row));
  }
  return inst;
}

Dataset CollectShadowDataset(std::span<const SimInstance> instances) {
  Dataset d;
  if (instances.empty()) return d;
  const auto& universe = instances.front().heuristics;
  for (const auto& name : universe) d.AddHeuristic(name);
  std::unordered_set<std::string> seen;
  for (const SimInstance& inst : instances) {
    if (inst.heuristics != universe) {
      throw InputError("instances do not share a heuristic universe");
    }
    for (size_t n = 0; n < inst.nodes.size(); ++n) {
      if (!seen.insert(inst.nodes[n]).second) {
        throw InputError("duplicate node id '" + inst.nodes[n] + "' across instances");
      }
      for (size_t h = 0; h < universe.size(); ++h) {
        const LatentOutcome& o = inst.outcomes[n][h];
        Observation obs;
        obs.heuristic = universe[h];
        obs.node = inst.nodes[n];
        obs.iterations_executed = o.succeeds ? o.iterations_needed : inst.max_iterations[h];
        if (o.succeeds) obs.iterations_to_solution = o.iterations_needed;
        obs.duration_seconds =
            static_cast<double>(obs.iterations_executed) * inst.seconds_per_iteration[h];
        d.AddObservation(std::move(obs));
      }
    }
  }
  return d;
}

RunTrace RunWithSchedule(const SimInstance& inst, const Schedule& s,
                         double time_limit) {
  if (!(time_limit > 0)) throw InputError("time limit must be positive");
  std::vector<int> order;
  for (const auto& e : s.entries()) {
    const int h = inst.HeuristicIndex(e.heuristic);
    if (h < 0) {
      throw InputError("schedule heuristic '" + e.heuristic +
                       "' is unknown to the simulator");
    }
    order.push_back(h);
  }
  RunTrace trace;
  trace.timeline.best_known = inst.optimum_value;
  trace.timeline.sense = ObjectiveSense::kMinimize;
  double clock = 0.0;
  double incumbent = std::numeric_limits<double>::infinity();
  for (size_t n = 0; n < inst.nodes.size(); ++n) {
    clock += inst.node_interarrival_seconds;
    if (clock >= time_limit) break;
    NodeRecord rec;
    rec.node = inst.nodes[n];
    for (size_t j = 0; j < order.size(); ++j) {
      const auto h = static_cast<size_t>(order[j]);
      const int64_t budget = s.entries()[j].budget;
      const LatentOutcome& o = inst.outcomes[n][h];
      const bool found = o.succeeds && o.iterations_needed <= budget;
      const int64_t spent = found ? o.iterations_needed : budget;
      const double seconds = static_cast<double>(spent) * inst.seconds_per_iteration[h];
      clock += seconds;
      rec.seconds += seconds;
      rec.attempts.emplace_back(inst.heuristics[h], spent);
      if (found && o.objective_value < incumbent) {
        incumbent = o.objective_value;
        rec.success_position = static_cast<int>(j) + 1;
        if (clock < time_limit) {
          trace.timeline.events.push_back({clock, o.objective_value});
        }
        break;
      }
    }
    trace.nodes.push_back(std::move(rec));
  }
  return trace;
}

MeanStd Summarize(std::span<const double> values) {
  MeanStd m;
  m.count = values.size();
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - m.mean) * (v - m.mean);
    m.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return m;
}

std::string FormatMeanStd(const MeanStd& m) {
  return FormatNumber(m.mean) + " ± " + FormatNumber(m.stddev);
}

PolicyComparison ComparePolicies(const SimConfig& cfg,
                                 std::span<const uint64_t> seeds,
                                 const Schedule& s, const Schedule& baseline,
                                 double time_limit) {
  if (seeds.empty()) throw InputError("compare needs at least one seed");
  if (!(time_limit > 0)) throw InputError("time limit must be positive");
  PolicyComparison out;
  std::vector<double> ratios;
  for (const uint64_t seed : seeds) {
    const SimInstance inst = GenerateInstance(cfg, seed);
    SeedComparison c;
    c.seed = seed;
    c.schedule_integral = PrimalIntegral(RunWithSchedule(inst, s, time_limit).timeline, time_limit);
    c.baseline_integral =
        PrimalIntegral(RunWithSchedule(inst, baseline, time_limit).timeline, time_limit);
    if (c.baseline_integral > 0) {
      c.ratio = c.schedule_integral / c.baseline_integral;
    } else {
      c.ratio = c.schedule_integral > 0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    ratios.push_back(c.ratio);
    out.per_seed.push_back(c);
  }
  out.ratio = Summarize(ratios);
  return out;
}

std::string ComparisonToCsv(const PolicyComparison& c) {
  std::string out = "seed,schedule_integral,baseline_integral,ratio\n";
  for (const auto& r : c.per_seed) {
    out += std::to_string(r.seed) + "," + FormatNumber(r.schedule_integral) + "," +
           FormatNumber(r.baseline_integral) + "," + FormatNumber(r.ratio) + "\n";
  }
  return out;
}

std::string FormatComparison(const PolicyComparison& c) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-22s %-14s %-14s %-10s\n", "seed",
                "P(T) schedule", "P(T) baseline", "ratio");
  out += line;
  for (const auto& r : c.per_seed) {
    std::snprintf(line, sizeof(line), "%-22s %-14s %-14s %-10s\n",
                  std::to_string(r.seed).c_str(), FormatNumber(r.schedule_integral).c_str(),
                  FormatNumber(r.baseline_integral).c_str(), FormatNumber(r.ratio).c_str());
    out += line;
  }
  out += "relative primal integral: " + FormatMeanStd(c.ratio) + "\n";
  return out;
}

Schedule DefaultBaseline(const Dataset& d) {
  Schedule s;
  for (int h = 0; h < d.num_heuristics(); ++h) {
    const auto bp = Breakpoints(d, h);
    if (!bp.empty()) s.Append(d.heuristics()[static_cast<size_t>(h)], bp.back());
  }
  return s;
}

Schedule DefaultBaseline(const SimConfig& cfg) {
  Schedule s;
  for (const auto& h : cfg.heuristics) s.Append(h.name, h.max_iterations);
  return s;
}

}  // namespace hsched
