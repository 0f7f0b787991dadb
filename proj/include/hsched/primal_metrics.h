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

// Primal gap, primal gap function and primal integral of an incumbent
// history.

#ifndef HSCHED_PRIMAL_METRICS_H_
#define HSCHED_PRIMAL_METRICS_H_

#include <string_view>
#include <vector>

namespace hsched {

enum class ObjectiveSense { kMinimize, kMaximize };

// Parses "min"/"max" (also "minimize"/"maximize"); throws InputError.
ObjectiveSense ParseSense(std::string_view s);

// Normalized distance of an objective value to the best known one, in
// [0, 1]. Equal magnitudes (relative tolerance 1e-9) give 0; opposite signs
// give 1.
double PrimalGap(double value, double best_known);

struct IncumbentEvent {
  double time_seconds = 0.0;
  double objective_value = 0.0;
};

struct IncumbentTimeline {
  std::vector<IncumbentEvent> events;
  double best_known = 0.0;
  ObjectiveSense sense = ObjectiveSense::kMinimize;

  // Throws InputError unless times are nonnegative and strictly increasing
  // and every event strictly improves on the previous one.
  void Validate() const;
};

// Reads "time_seconds,objective_value" rows and validates the result.
IncumbentTimeline LoadTimeline(std::string_view csv, double best_known,
                               ObjectiveSense sense);

struct GapSegment {
  double start = 0.0;  // segment covers [start, next start)
  double gap = 1.0;
};

// Piecewise-constant, right-continuous gap function starting at t = 0.
struct GapFunction {
  std::vector<GapSegment> segments;

  double At(double t) const;
};

GapFunction ComputeGapFunction(const IncumbentTimeline& tl);

// Step sum over incumbent times up to `time_limit`; events after the limit
// are ignored. Throws InputError if time_limit <= 0.
double PrimalIntegral(const IncumbentTimeline& tl, double time_limit);

// Area under the gap function on [0, time_limit].
double IntegrateGapFunction(const GapFunction& gf, double time_limit);

}  // namespace hsched

#endif  // HSCHED_PRIMAL_METRICS_H_
