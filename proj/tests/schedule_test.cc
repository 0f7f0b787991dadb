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

#include "hsched/schedule.h"

#include <doctest.h>

#include <random>

#include "hsched/text_util.h"
#include "test_support.h"

namespace hsched {
namespace {

using testing::kFail;

Schedule Worked() { return Schedule({{"h1", 1}, {"h2", 3}}); }

TEST_CASE("Schedule construction rules") {
  Schedule s;
  s.Append("h1", 2);
  s.Append("h2", 5);
  CHECK(s.size() == 2);
  CHECK(s.Contains("h1"));
  CHECK_FALSE(s.Contains("h3"));
  CHECK_THROWS_AS(s.Append("h1", 3), InputError);
  CHECK_THROWS_AS(s.Append("h3", 0), InputError);
  s.ExtendLast(9);
  CHECK(s.entries().back().budget == 9);
  CHECK_THROWS_AS(Schedule({{"a", 1}, {"a", 2}}), InputError);
  Schedule empty;
  CHECK_THROWS(empty.ExtendLast(3));
  CHECK(ToString(Worked()) == "<(h1,1), (h2,3)>");
  CHECK(ToString(Schedule()) == "<>");
}

TEST_CASE("Schedule CSV round trip and errors") {
  const Schedule s = Worked();
  const std::string csv = ScheduleToCsv(s);
  CHECK(csv.rfind(std::string(kScheduleHeader), 0) == 0);
  CHECK(LoadSchedule(csv) == s);
  CHECK(LoadSchedule(std::string(kScheduleHeader) + "\n").empty());
  CHECK_THROWS_AS(LoadSchedule(std::string(kScheduleHeader) + "\n1,h1,0\n"), InputError);
  CHECK_THROWS_AS(LoadSchedule(std::string(kScheduleHeader) + "\n1,h1,1\n2,h1,3\n"),
                  InputError);
  CHECK_THROWS_AS(LoadSchedule("bad header\n"), InputError);
}

TEST_CASE("NodeCost on the worked example") {
  const Dataset d = testing::WorkedExample();
  const auto unit = IterationCostProfile::Uniform(3);
  const NodeOutcome n1 = NodeCost(Worked(), d, "N1", unit);
  CHECK(n1.first_success_position == 1);
  CHECK(n1.cost == 1.0);
  const NodeOutcome n2 = NodeCost(Worked(), d, "N2", unit);
  CHECK(n2.first_success_position == 2);
  CHECK(n2.cost == 4.0);
  // h2 would need 4 iterations on N1 but h1 solved it first.
  CHECK(NodeCost(Schedule({{"h2", 3}, {"h1", 1}}), d, "N1", unit).cost == 4.0);
}

TEST_CASE("NodeCost edge cases") {
  const Dataset d = testing::WorkedExample();
  const auto unit = IterationCostProfile::Uniform(3);
  SUBCASE("empty schedule costs the penalty only") {
    const NodeOutcome o = NodeCost(Schedule(), d, "N1", unit);
    CHECK_FALSE(o.solved());
    CHECK(o.cost == 1.0);
  }
  SUBCASE("budget exactly equal to tau succeeds") {
    CHECK(NodeCost(Schedule({{"h3", 2}}), d, "N3", unit).solved());
    CHECK_FALSE(NodeCost(Schedule({{"h3", 1}}), d, "N3", unit).solved());
  }
  SUBCASE("unsolved node pays every budget plus one") {
    const NodeOutcome o = NodeCost(Schedule({{"h1", 1}, {"h3", 1}}), d, "N2", unit);
    CHECK_FALSE(o.solved());
    CHECK(o.cost == 3.0);
  }
  SUBCASE("unknown names are rejected") {
    CHECK_THROWS_AS(NodeCost(Worked(), d, "N9", unit), InputError);
    CHECK_THROWS_AS(NodeCost(Schedule({{"zz", 1}}), d, "N1", unit), InputError);
  }
  SUBCASE("normalization weights iterations but not the penalty") {
    IterationCostProfile w;
    w.seconds_per_iteration = {2.0, 0.5, 1.0};
    const NodeOutcome o = NodeCost(Worked(), d, "N2", w, {.normalize = true});
    CHECK(o.cost == doctest::Approx(2.0 * 1 + 0.5 * 3));
    const NodeOutcome u = NodeCost(Schedule({{"h1", 1}}), d, "N2", w, {.normalize = true});
    CHECK(u.cost == doctest::Approx(2.0 + 1.0));
  }
}

TEST_CASE("Evaluate on the worked example") {
  const Dataset d = testing::WorkedExample();
  const auto unit = IterationCostProfile::Uniform(3);
  for (double alpha : {0.0, 0.5, 1.0}) {
    const ScheduleEvaluation e = Evaluate(Worked(), d, alpha, unit);
    CHECK(e.objective == 9.0);
    CHECK(e.solved_nodes == 3);
    CHECK(e.total_nodes == 3);
    CHECK(e.success_rate == 1.0);
    CHECK(e.feasible);
    REQUIRE(e.per_node.size() == 3);
    CHECK(e.per_node[2].node == "N3");
  }
  const std::string text = FormatEvaluation(Evaluate(Worked(), d, 1.0, unit));
  CHECK(text.find("FEASIBLE") != std::string::npos);
  CHECK_THROWS_AS(Evaluate(Worked(), d, 1.5, unit), InputError);
  CHECK_THROWS_AS(Evaluate(Worked(), d, -0.1, unit), InputError);
}

TEST_CASE("Evaluate on the pathological example") {
  const Dataset d = testing::PathologicalExample();
  const auto unit = IterationCostProfile::Uniform(1);
  const ScheduleEvaluation e = Evaluate(Schedule({{"h", 1}}), d, 0.02, unit);
  CHECK(e.solved_nodes == 1);
  CHECK(e.success_rate == doctest::Approx(0.01));
  CHECK(e.objective == 1.0 + 99 * 2.0);
  CHECK_FALSE(e.feasible);
  CHECK(Evaluate(Schedule({{"h", 1}}), d, 0.01, unit).feasible);
  const std::string text = FormatEvaluation(e);
  CHECK(text.find("INFEASIBLE") != std::string::npos);
}

TEST_CASE("Evaluate agrees with the reference node time") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = testing::RandomDataset(rng, 4, 8, 4, true);
    const auto profile = AverageIterationCost(d);
    std::vector<int> order(static_cast<size_t>(d.num_heuristics()));
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::pair<int, int64_t>> raw;
    Schedule s;
    const size_t len = std::uniform_int_distribution<size_t>(0, order.size())(rng);
    for (size_t i = 0; i < len; ++i) {
      const int64_t b = std::uniform_int_distribution<int64_t>(1, 13)(rng);
      raw.push_back({order[i], b});
      s.Append(d.heuristics()[static_cast<size_t>(order[i])], b);
    }
    for (bool normalize : {false, true}) {
      const ScheduleEvaluation e = Evaluate(s, d, 0.0, profile, {.normalize = normalize});
      double total = 0.0;
      int solved = 0;
      for (int n = 0; n < d.num_nodes(); ++n) {
        bool ok = false;
        const double t = testing::ReferenceNodeTime(
            d, raw, n, &ok, normalize ? profile.seconds_per_iteration : std::vector<double>{});
        CHECK(e.per_node[static_cast<size_t>(n)].cost == doctest::Approx(t).epsilon(1e-12));
        CHECK(e.per_node[static_cast<size_t>(n)].solved() == ok);
        total += t;
        solved += ok;
      }
      CHECK(e.objective == doctest::Approx(total).epsilon(1e-12));
      CHECK(e.solved_nodes == solved);
    }
  }
}

TEST_CASE("Appending an entry never unsolves a node") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Dataset d = testing::RandomDataset(rng, 4, 8, 4);
    const auto unit = IterationCostProfile::Uniform(d.num_heuristics());
    Schedule s;
    int previous = 0;
    for (int h = 0; h < d.num_heuristics(); ++h) {
      s.Append(d.heuristics()[static_cast<size_t>(h)],
               std::uniform_int_distribution<int64_t>(1, 12)(rng));
      const int solved = Evaluate(s, d, 0.0, unit).solved_nodes;
      CHECK(solved >= previous);
      previous = solved;
    }
  }
}

}  // namespace
}  // namespace hsched
