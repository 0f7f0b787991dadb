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

#include "hsched/dataset.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "hsched/text_util.h"

namespace hsched {
namespace {

bool IsFailToken(std::string_view s) {
  if (s.empty()) return true;
  if (s.size() != 3) return false;
  return std::tolower(static_cast<unsigned char>(s[0])) == 'i' &&
         std::tolower(static_cast<unsigned char>(s[1])) == 'n' &&
         std::tolower(static_cast<unsigned char>(s[2])) == 'f';
}

std::string RowError(size_t row, const std::string& what) {
  return "dataset row " + std::to_string(row) + ": " + what;
}

}  // namespace

int Dataset::AddHeuristic(std::string_view name) {
  if (name.empty()) throw InputError("heuristic name must be non-empty");
  std::string key(name);
  if (auto it = heuristic_index_.find(key); it != heuristic_index_.end()) {
    return it->second;
  }
  const int index = num_heuristics();
  heuristics_.push_back(key);
  heuristic_index_.emplace(std::move(key), index);
  EnsureShape();
  return index;
}

int Dataset::AddNode(std::string_view name) {
  if (name.empty()) throw InputError("node name must be non-empty");
  std::string key(name);
  if (auto it = node_index_.find(key); it != node_index_.end()) {
    return it->second;
  }
  const int index = num_nodes();
  nodes_.push_back(key);
  node_index_.emplace(std::move(key), index);
  EnsureShape();
  return index;
}

void Dataset::EnsureShape() {
  cells_.resize(heuristics_.size());
  for (auto& row : cells_) row.resize(nodes_.size());
}

void Dataset::AddObservation(Observation obs) {
  if (obs.iterations_executed < 1) {
    throw InputError("iterations_executed must be a positive integer");
  }
  if (obs.iterations_to_solution) {
    if (*obs.iterations_to_solution < 1) {
      throw InputError("iterations_to_solution must be at least 1");
    }
    if (*obs.iterations_to_solution > obs.iterations_executed) {
      throw InputError(
          "iterations_to_solution exceeds iterations_executed for (" +
          obs.heuristic + ", " + obs.node + ")");
    }
  }
  if (obs.duration_seconds &&
      (!std::isfinite(*obs.duration_seconds) || *obs.duration_seconds < 0)) {
    throw InputError("duration_seconds must be a nonnegative finite number");
  }
  if (auto h = FindHeuristic(obs.heuristic), n = FindNode(obs.node); h && n) {
    if (cell(*h, *n).observed) {
      throw InputError("duplicate observation for (" + obs.heuristic + ", " +
                       obs.node + ")");
    }
  }
  const int h = AddHeuristic(obs.heuristic);
  const int n = AddNode(obs.node);
  Cell& c = cells_[static_cast<size_t>(h)][static_cast<size_t>(n)];
  c.observed = true;
  c.tau = obs.iterations_to_solution;
  c.iterations_executed = obs.iterations_executed;
  c.duration_seconds = obs.duration_seconds;
  observations_.push_back(std::move(obs));
}

std::optional<int> Dataset::FindHeuristic(std::string_view name) const {
  auto it = heuristic_index_.find(std::string(name));
  if (it == heuristic_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Dataset::FindNode(std::string_view name) const {
  auto it = node_index_.find(std::string(name));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

int Dataset::HeuristicIndex(std::string_view name) const {
  if (auto h = FindHeuristic(name)) return *h;
  throw InputError("unknown heuristic '" + std::string(name) + "'");
}

int Dataset::NodeIndex(std::string_view name) const {
  if (auto n = FindNode(name)) return *n;
  throw InputError("unknown node '" + std::string(name) + "'");
}

Dataset LoadDataset(std::string_view csv) {
  Dataset d;
  bool header_seen = false;
  size_t row = 0;
  for (std::string_view line : SplitLines(csv)) {
    ++row;
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    if (!header_seen) {
      if (trimmed != kDatasetHeader) {
        throw InputError(RowError(row, "expected header '" +
                                           std::string(kDatasetHeader) + "'"));
      }
      header_seen = true;
      continue;
    }
    const auto fields = SplitFields(trimmed, ',');
    if (fields.size() != 5) {
      throw InputError(RowError(row, "expected 5 fields, got " +
                                         std::to_string(fields.size())));
    }
    Observation obs;
    obs.heuristic = std::string(Trim(fields[0]));
    obs.node = std::string(Trim(fields[1]));
    if (obs.heuristic.empty() || obs.node.empty()) {
      throw InputError(RowError(row, "empty heuristic or node identifier"));
    }
    const std::string_view tau_field = Trim(fields[2]);
    if (!IsFailToken(tau_field)) {
      auto tau = ParseInt64(tau_field);
      if (!tau) {
        throw InputError(RowError(row, "non-integer iterations_to_solution '" +
                                           std::string(tau_field) + "'"));
      }
      obs.iterations_to_solution = *tau;
    }
    auto executed = ParseInt64(fields[3]);
    if (!executed) {
      throw InputError(RowError(row, "non-integer iterations_executed '" +
                                         std::string(Trim(fields[3])) + "'"));
    }
    obs.iterations_executed = *executed;
    const std::string_view dur_field = Trim(fields[4]);
    if (!dur_field.empty()) {
      auto dur = ParseDouble(dur_field);
      if (!dur) {
        throw InputError(RowError(row, "malformed duration_seconds '" +
                                           std::string(dur_field) + "'"));
      }
      if (*dur < 0) {
        throw InputError(RowError(row, "negative duration_seconds"));
      }
      obs.duration_seconds = *dur;
    }
    try {
      d.AddObservation(std::move(obs));
    } catch (const InputError& e) {
      throw InputError(RowError(row, e.what()));
    }
  }
  if (!header_seen) throw InputError("dataset is missing its header line");
  return d;
}

std::string DatasetToCsv(const Dataset& d) {
  std::string out(kDatasetHeader);
  out += '\n';
  for (const Observation& o : d.observations()) {
    out += o.heuristic;
    out += ',';
    out += o.node;
    out += ',';
    out += o.iterations_to_solution ? std::to_string(*o.iterations_to_solution)
                                    : "inf";
    out += ',';
    out += std::to_string(o.iterations_executed);
    out += ',';
    if (o.duration_seconds) out += FormatExact(*o.duration_seconds);
    out += '\n';
  }
  return out;
}

IterationCostProfile IterationCostProfile::Uniform(int num_heuristics) {
  IterationCostProfile p;
  p.seconds_per_iteration.assign(static_cast<size_t>(num_heuristics), 1.0);
  return p;
}

IterationCostProfile AverageIterationCost(const Dataset& d) {
  IterationCostProfile profile;
  profile.seconds_per_iteration.reserve(static_cast<size_t>(d.num_heuristics()));
  for (int h = 0; h < d.num_heuristics(); ++h) {
    std::vector<double> durations;
    int64_t iterations = 0;
    for (int n = 0; n < d.num_nodes(); ++n) {
      const Cell& c = d.cell(h, n);
      if (!c.observed || !c.duration_seconds) continue;
      durations.push_back(*c.duration_seconds);
      iterations += c.iterations_executed;
    }
    const bool any_duration = !durations.empty();
    // Summing in sorted order makes the result independent of row order.
    std::sort(durations.begin(), durations.end());
    double seconds = 0.0;
    for (double x : durations) seconds += x;
    const std::string& name = d.heuristics()[static_cast<size_t>(h)];
    if (!any_duration) {
      profile.seconds_per_iteration.push_back(1.0);
      continue;
    }
    if (iterations == 0 || seconds <= 0.0) {
      profile.warnings.push_back("heuristic '" + name +
                                 "': no positive time per iteration, using 1.0");
      profile.seconds_per_iteration.push_back(1.0);
      continue;
    }
    profile.seconds_per_iteration.push_back(seconds /
                                            static_cast<double>(iterations));
  }
  return profile;
}

std::vector<int64_t> Breakpoints(const Dataset& d, int heuristic) {
  if (heuristic < 0 || heuristic >= d.num_heuristics()) {
    throw InputError("unknown heuristic index " + std::to_string(heuristic));
  }
  std::vector<int64_t> out;
  for (int n = 0; n < d.num_nodes(); ++n) {
    if (const auto& tau = d.tau(heuristic, n)) out.push_back(*tau);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int64_t> Breakpoints(const Dataset& d, std::string_view heuristic) {
  return Breakpoints(d, d.HeuristicIndex(heuristic));
}

}  // namespace hsched
