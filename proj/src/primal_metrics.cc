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

#include "hsched/primal_metrics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsched/text_util.h"

namespace hsched {
namespace {

constexpr double kMagnitudeTolerance = 1e-9;

// Objectives in minimization form.
double Oriented(double v, ObjectiveSense sense) {
  return sense == ObjectiveSense::kMinimize ? v : -v;
}

}  // namespace

ObjectiveSense ParseSense(std::string_view s) {
  s = Trim(s);
  if (s == "min" || s == "minimize" || s == "MIN") return ObjectiveSense::kMinimize;
  if (s == "max" || s == "maximize" || s == "MAX") return ObjectiveSense::kMaximize;
  throw InputError("sense must be 'min' or 'max', got '" + std::string(s) + "'");
}

double PrimalGap(double value, double best_known) {
  const double a = std::abs(value);
  const double b = std::abs(best_known);
  if (value * best_known < 0) return 1.0;
  if (std::abs(a - b) <= kMagnitudeTolerance * std::max(a, b)) return 0.0;
  return std::abs(value - best_known) / std::max(a, b);
}

void IncumbentTimeline::Validate() const {
  for (size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (!std::isfinite(e.time_seconds) || e.time_seconds < 0) {
      throw InputError("incumbent times must be nonnegative");
    }
    if (!std::isfinite(e.objective_value)) {
      throw InputError("incumbent objective values must be finite");
    }
    if (i == 0) continue;
    const auto& prev = events[i - 1];
    if (!(e.time_seconds > prev.time_seconds)) {
      throw InputError("incumbent times must be strictly increasing (event " +
                       std::to_string(i + 1) + ")");
    }
    if (!(Oriented(e.objective_value, sense) <
          Oriented(prev.objective_value, sense))) {
      throw InputError("incumbent values must strictly improve (event " +
                       std::to_string(i + 1) + ")");
    }
  }
}

IncumbentTimeline LoadTimeline(std::string_view csv, double best_known,
                               ObjectiveSense sense) {
  IncumbentTimeline tl;
  tl.best_known = best_known;
  tl.sense = sense;
  bool header_seen = false;
  size_t row = 0;
  for (std::string_view line : SplitLines(csv)) {
    ++row;
    const std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const std::string where = "timeline row " + std::to_string(row) + ": ";
    if (!header_seen) {
      if (trimmed != "time_seconds,objective_value") {
        throw InputError(where + "expected header 'time_seconds,objective_value'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = SplitFields(trimmed, ',');
    if (fields.size() != 2) throw InputError(where + "expected 2 fields");
    auto t = ParseDouble(fields[0]);
    auto v = ParseDouble(fields[1]);
    if (!t || !v) throw InputError(where + "malformed number");
    tl.events.push_back({*t, *v});
  }
  if (!header_seen) throw InputError("timeline is missing its header line");
  tl.Validate();
  return tl;
}

double GapFunction::At(double t) const {
  double gap = 1.0;
  for (const auto& s : segments) {
    if (s.start > t) break;
    gap = s.gap;
  }
  return gap;
}

GapFunction ComputeGapFunction(const IncumbentTimeline& tl) {
  GapFunction gf;
  const double best = Oriented(tl.best_known, tl.sense);
  if (tl.events.empty() || tl.events.front().time_seconds > 0) {
    gf.segments.push_back({0.0, 1.0});
  }
  for (const auto& e : tl.events) {
    gf.segments.push_back(
        {e.time_seconds, PrimalGap(Oriented(e.objective_value, tl.sense), best)});
  }
  return gf;
}

double PrimalIntegral(const IncumbentTimeline& tl, double time_limit) {
  if (!(time_limit > 0)) throw InputError("time limit must be positive");
  const double best = Oriented(tl.best_known, tl.sense);
  double area = 0.0;
  double prev_time = 0.0;
  double prev_gap = 1.0;
  for (const auto& e : tl.events) {
    if (e.time_seconds >= time_limit) break;
    area += prev_gap * (e.time_seconds - prev_time);
    prev_time = e.time_seconds;
    prev_gap = PrimalGap(Oriented(e.objective_value, tl.sense), best);
  }
  area += prev_gap * (time_limit - prev_time);
  // Rounding in the step sum can overshoot the exact bound.
  return std::clamp(area, 0.0, time_limit);
}

double IntegrateGapFunction(const GapFunction& gf, double time_limit) {
  if (!(time_limit > 0)) throw InputError("time limit must be positive");
  double area = 0.0;
  for (size_t i = 0; i < gf.segments.size(); ++i) {
    const double start = gf.segments[i].start;
    if (start >= time_limit) break;
    const double end = i + 1 < gf.segments.size()
                           ? std::min(gf.segments[i + 1].start, time_limit)
                           : time_limit;
    area += gf.segments[i].gap * (end - start);
  }
  return std::clamp(area, 0.0, time_limit);
}

}  // namespace hsched
