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

#include "hsched/exact_oracle.h"

#include <doctest.h>

#include <array>
#include <random>

#include "hsched/greedy.h"
#include "hsched/text_util.h"
#include "test_support.h"

namespace hsched {
namespace {

using testing::kFail;

TEST_CASE("worked example optima") {
  const Dataset d = testing::WorkedExample();
  const auto unit = IterationCostProfile::Uniform(3);
  CHECK(CountCandidateSchedules(d) == 46);

  const auto full = SolveExact(d, 1.0, unit);
  REQUIRE(full);
  CHECK(full->schedule == Schedule({{"h1", 1}, {"h2", 3}}));
  CHECK(full->objective == 9.0);
  CHECK(full->solved_nodes == 3);
  CHECK(full->schedules_enumerated == 46);

  // Solving N1 and N3 only is cheaper once two nodes suffice.
  const auto half = SolveExact(d, 0.5, unit);
  REQUIRE(half);
  CHECK(half->schedule == Schedule({{"h1", 1}, {"h3", 2}}));
  CHECK(half->objective == 8.0);
  CHECK(half->solved_nodes == 2);

  const auto third = SolveExact(d, 1.0 / 3.0, unit);
  REQUIRE(third);
  CHECK(third->schedule == Schedule({{"h1", 1}}));
  CHECK(third->objective == 5.0);

  const auto none = SolveExact(d, 0.0, unit);
  REQUIRE(none);
  CHECK(none->schedule.empty());
  CHECK(none->objective == 3.0);
}

TEST_CASE("infeasible coverage returns nothing") {
  const Dataset d = testing::MakeDataset({{1, kFail}, {2, kFail}});
  const auto unit = IterationCostProfile::Uniform(2);
  CHECK_FALSE(SolveExact(d, 1.0, unit).has_value());
  CHECK(SolveExact(d, 0.5, unit).has_value());
}

TEST_CASE("limits are enforced with a named reason") {
  const Dataset d = testing::WorkedExample();
  const auto unit = IterationCostProfile::Uniform(3);
  auto message = [&](ExactLimits limits) {
    try {
      SolveExact(d, 1.0, unit, {}, limits);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message({.max_heuristics = 2}).find("max_heuristics") != std::string::npos);
  CHECK(message({.max_breakpoints_per_heuristic = 1}).find("max_breakpoints_per_heuristic") !=
        std::string::npos);
  CHECK(message({.enumeration_budget = 10}).find("enumeration_budget") != std::string::npos);
  CHECK(message({.enumeration_budget = 46}).empty());
  CHECK_THROWS_AS(SolveExact(d, 1.5, unit), InputError);
}

TEST_CASE("exact matches brute force on random datasets") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 120; ++trial) {
    const Dataset d = testing::RandomDataset(rng, 3, 6, 3, true);
    const double alpha = std::array<double, 3>{0.0, 0.5, 1.0}[trial % 3];
    const bool normalize = trial % 2 == 1;
    const auto costs = AverageIterationCost(d);
    const auto exact = SolveExact(d, alpha, costs, {.normalize = normalize});
    const auto ref = testing::BruteForceOptimum(
        d, alpha, normalize ? costs.seconds_per_iteration : std::vector<double>{});
    REQUIRE(exact.has_value() == ref.feasible);
    if (!exact) continue;
    CHECK(exact->objective == doctest::Approx(ref.objective).epsilon(1e-12));
    const auto e = Evaluate(exact->schedule, d, alpha, costs, {.normalize = normalize});
    CHECK(e.feasible);
    CHECK(e.objective == doctest::Approx(exact->objective).epsilon(1e-12));
    CHECK(e.solved_nodes == exact->solved_nodes);
  }
}

TEST_CASE("greedy is sandwiched above the exact optimum") {
  std::mt19937_64 rng(4321);
  for (int trial = 0; trial < 150; ++trial) {
    const Dataset d = testing::RandomDataset(rng, 4, 8, 4);
    const auto unit = IterationCostProfile::Uniform(d.num_heuristics());
    const auto g = BuildSchedule(d);
    for (double alpha : {0.0, 0.5, 1.0}) {
      if (g.evaluation.success_rate < alpha - 1e-9) continue;
      const auto exact = SolveExact(d, alpha, unit);
      REQUIRE(exact);
      CHECK(g.evaluation.objective >= exact->objective - 1e-9);
    }
  }
}

TEST_CASE("the exact optimum is monotone in alpha") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 60; ++trial) {
    const Dataset d = testing::RandomDataset(rng, 4, 6, 3);
    const auto unit = IterationCostProfile::Uniform(d.num_heuristics());
    double previous = 0.0;
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto r = SolveExact(d, alpha, unit);
      if (!r) break;
      CHECK(r->objective >= previous);
      previous = r->objective;
    }
  }
}

}  // namespace
}  // namespace hsched
