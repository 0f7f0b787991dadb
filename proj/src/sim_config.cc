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

#include "hsched/sim_config.h"

#include <cmath>

#include "hsched/text_util.h"

namespace hsched {

void SimConfig::Validate() const {
  if (heuristics.empty()) throw InputError("config declares no heuristics");
  if (nodes_min < 1 || nodes_max < nodes_min) {
    throw InputError("need 1 <= nodes_min <= nodes_max");
  }
  if (instances < 1) throw InputError("instances must be positive");
  if (!(node_interarrival_seconds > 0)) {
    throw InputError("node_interarrival_seconds must be positive");
  }
  if (!std::isfinite(optimum_value)) throw InputError("optimum_value must be finite");
  if (!(time_limit_seconds > 0)) throw InputError("time_limit_seconds must be positive");
  for (size_t i = 0; i < heuristics.size(); ++i) {
    const auto& h = heuristics[i];
    const std::string where = "heuristic '" + h.name + "': ";
    if (h.name.empty()) throw InputError("heuristic names must be non-empty");
    for (size_t j = 0; j < i; ++j) {
      if (heuristics[j].name == h.name) throw InputError(where + "declared twice");
    }
    if (!(h.success_probability >= 0 && h.success_probability <= 1)) {
      throw InputError(where + "success_probability must lie in [0, 1]");
    }
    if (!(h.geometric_rate > 0 && h.geometric_rate <= 1)) {
      throw InputError(where + "geometric_rate must lie in (0, 1]");
    }
    if (h.max_iterations < 1) throw InputError(where + "max_iterations must be >= 1");
    if (!(h.seconds_per_iteration > 0) || !std::isfinite(h.seconds_per_iteration)) {
      throw InputError(where + "seconds_per_iteration must be positive");
    }
    if (!(h.quality_gap_mean >= 0) || !std::isfinite(h.quality_gap_mean)) {
      throw InputError(where + "quality_gap_mean must be nonnegative");
    }
  }
}

int SimConfig::HeuristicIndex(std::string_view name) const {
  for (size_t i = 0; i < heuristics.size(); ++i) {
    if (heuristics[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

SimConfig ParseSimConfig(std::string_view text) {
  SimConfig cfg;
  size_t line_no = 0;
  for (std::string_view raw : SplitLines(text)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw InputError(where + "expected 'key = value'");
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));

    auto as_double = [&]() {
      auto v = ParseDouble(value);
      if (!v) throw InputError(where + "'" + std::string(key) + "' needs a number");
      return *v;
    };
    auto as_int = [&]() {
      auto v = ParseInt64(value);
      if (!v) throw InputError(where + "'" + std::string(key) + "' needs an integer");
      return *v;
    };

    if (key.substr(0, 10) == "heuristic.") {
      const std::string_view rest = key.substr(10);
      const size_t dot = rest.rfind('.');
      if (dot == std::string_view::npos || dot == 0) {
        throw InputError(where + "expected heuristic.<name>.<field>");
      }
      const std::string name(rest.substr(0, dot));
      const std::string_view field = rest.substr(dot + 1);
      int index = cfg.HeuristicIndex(name);
      if (index < 0) {
        cfg.heuristics.push_back(HeuristicSpec{});
        cfg.heuristics.back().name = name;
        index = static_cast<int>(cfg.heuristics.size()) - 1;
      }
      HeuristicSpec& h = cfg.heuristics[static_cast<size_t>(index)];
      if (field == "class") {
        if (value == "diving" || value == "DIVING") h.cls = HeuristicClass::kDiving;
        else if (value == "lns" || value == "LNS") h.cls = HeuristicClass::kLns;
        else throw InputError(where + "class must be 'diving' or 'lns'");
      } else if (field == "success_probability") {
        h.success_probability = as_double();
      } else if (field == "geometric_rate") {
        h.geometric_rate = as_double();
      } else if (field == "max_iterations") {
        h.max_iterations = as_int();
      } else if (field == "seconds_per_iteration") {
        h.seconds_per_iteration = as_double();
      } else if (field == "quality_gap_mean") {
        h.quality_gap_mean = as_double();
      } else {
        throw InputError(where + "unknown heuristic field '" + std::string(field) + "'");
      }
    } else if (key == "instances") {
      cfg.instances = static_cast<int>(as_int());
    } else if (key == "nodes_min") {
      cfg.nodes_min = static_cast<int>(as_int());
    } else if (key == "nodes_max") {
      cfg.nodes_max = static_cast<int>(as_int());
    } else if (key == "node_interarrival_seconds") {
      cfg.node_interarrival_seconds = as_double();
    } else if (key == "optimum_value") {
      cfg.optimum_value = as_double();
    } else if (key == "time_limit_seconds") {
      cfg.time_limit_seconds = as_double();
    } else {
      throw InputError(where + "unknown key '" + std::string(key) + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

std::string SimConfigToText(const SimConfig& cfg) {
  std::string out;
  out += "instances = " + std::to_string(cfg.instances) + "\n";
  out += "nodes_min = " + std::to_string(cfg.nodes_min) + "\n";
  out += "nodes_max = " + std::to_string(cfg.nodes_max) + "\n";
  out += "node_interarrival_seconds = " + FormatExact(cfg.node_interarrival_seconds) + "\n";
  out += "optimum_value = " + FormatExact(cfg.optimum_value) + "\n";
  out += "time_limit_seconds = " + FormatExact(cfg.time_limit_seconds) + "\n";
  for (const auto& h : cfg.heuristics) {
    const std::string p = "heuristic." + h.name + ".";
    out += p + "class = " + (h.cls == HeuristicClass::kDiving ? "diving" : "lns") + "\n";
    out += p + "success_probability = " + FormatExact(h.success_probability) + "\n";
    out += p + "geometric_rate = " + FormatExact(h.geometric_rate) + "\n";
    out += p + "max_iterations = " + std::to_string(h.max_iterations) + "\n";
    out += p + "seconds_per_iteration = " + FormatExact(h.seconds_per_iteration) + "\n";
    out += p + "quality_gap_mean = " + FormatExact(h.quality_gap_mean) + "\n";
  }
  return out;
}

}  // namespace hsched
