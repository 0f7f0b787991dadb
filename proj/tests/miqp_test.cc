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

#include "hsched/miqp.h"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>

#include "hsched/exact_oracle.h"
#include "hsched/text_util.h"
#include "test_support.h"

namespace hsched {
namespace {

using testing::kFail;

bool Has(const CheckResult& r, const std::string& id) {
  return std::find(r.violated.begin(), r.violated.end(), id) != r.violated.end();
}

TEST_CASE("variable counts on the worked example") {
  const MiqpModel m = ExportMiqp(testing::WorkedExample(), 1.0);
  CHECK(m.CountFamily("x") == 12);
  CHECK(m.CountFamily("t") == 3);
  CHECK(m.CountFamily("p") == 3);
  CHECK(m.CountFamily("s") == 9);
  CHECK(m.CountFamily("z") == 9);
  CHECK(m.CountFamily("f") == 9);
  CHECK(m.CountFamily("sN") == 3);
  CHECK(m.CountFamily("pmin") == 3);
  CHECK(m.CountFamily("tN") == 3);
  CHECK(m.CountFamily("y") == 9);
  CHECK(m.CountFamily("q") == 9);
  CHECK(m.max_iterations == std::vector<int64_t>{1, 4, 4});
  CHECK(m.variables[static_cast<size_t>(m.Var("t[h2]"))].upper == 4);
  CHECK_FALSE(m.quadratic_rows.empty());
}

TEST_CASE("single heuristic and node") {
  const MiqpModel m = ExportMiqp(testing::MakeDataset({{1}}), 1.0);
  const auto& tn = m.variables[static_cast<size_t>(m.Var("tN[N1]"))];
  CHECK(tn.lower == 1);
  CHECK(tn.upper == 2);
  CHECK(m.CountFamily("x") == 2);
}

TEST_CASE("export rejects bad input") {
  CHECK_THROWS_AS(ExportMiqp(Dataset(), 0.5), InputError);
  CHECK_THROWS_AS(ExportMiqp(testing::WorkedExample(), 2.0), InputError);
  CHECK_THROWS_AS(ExportMiqp(testing::WorkedExample(), 0.5).Var("nope"), InputError);
}

TEST_CASE("checking the worked-example optimum") {
  const MiqpModel m = ExportMiqp(testing::WorkedExample(), 1.0);
  const Assignment a = EncodeSchedule(m, Schedule({{"h1", 1}, {"h2", 3}}));
  CHECK(a.at("x[h1][1]") == 1);
  CHECK(a.at("x[h2][2]") == 1);
  CHECK(a.at("x[h3][0]") == 1);
  CHECK(a.at("t[h1]") == 1);
  CHECK(a.at("t[h2]") == 3);
  CHECK(a.at("t[h3]") == 0);

  const CheckResult original = CheckAssignment(m, a);
  CHECK(original.feasible);
  CHECK(original.violated.empty());
  CHECK(original.objective == 9);
  const CheckResult rows = CheckRows(m, a);
  CHECK(rows.feasible);
  CHECK(rows.objective == 9);

  SUBCASE("dropping a solved flag is caught") {
    Assignment bad = a;
    bad.values["sN[N1]"] = 0;
    const CheckResult r = CheckAssignment(m, bad);
    CHECK_FALSE(r.feasible);
    CHECK(Has(r, "node_solved[N1]"));
    CHECK_FALSE(CheckRows(m, bad).feasible);
  }
  SUBCASE("all zero violates the position rows") {
    Assignment zero;
    for (const auto& v : m.variables) zero.values[v.name] = 0;
    const CheckResult r = CheckAssignment(m, zero);
    CHECK_FALSE(r.feasible);
    CHECK(Has(r, "one_position[h1]"));
    CHECK_FALSE(CheckRows(m, zero).feasible);
  }
  SUBCASE("out-of-range budget is a bounds violation") {
    Assignment bad = a;
    bad.values["t[h2]"] = 9;
    CHECK(Has(CheckAssignment(m, bad), "bounds:t[h2]"));
  }
  SUBCASE("missing variable is an input error") {
    Assignment bad = a;
    bad.values.erase("x[h1][1]");
    CHECK_THROWS_AS(CheckAssignment(m, bad), InputError);
  }
}

TEST_CASE("coverage row reacts to alpha") {
  const Dataset d = testing::WorkedExample();
  const Schedule s({{"h1", 1}});
  const MiqpModel loose = ExportMiqp(d, 1.0 / 3.0);
  CHECK(CheckAssignment(loose, EncodeSchedule(loose, s)).feasible);
  CHECK(CheckRows(loose, EncodeSchedule(loose, s)).feasible);
  const MiqpModel tight = ExportMiqp(d, 0.5);
  const CheckResult r = CheckAssignment(tight, EncodeSchedule(tight, s));
  CHECK(Has(r, "coverage"));
  CHECK(Has(CheckRows(tight, EncodeSchedule(tight, s)), "coverage"));
}

TEST_CASE("render and parse round trip") {
  const MiqpModel m = ExportMiqp(testing::WorkedExample(), 0.5);
  const std::string text = RenderMiqp(m);
  CHECK(text.find("VARIABLES") != std::string::npos);
  CHECK(text.find("QUADRATIC") != std::string::npos);
  CHECK(text.find("END") != std::string::npos);
  const MiqpModel back = ParseMiqp(text);
  CHECK(back.variables.size() == m.variables.size());
  CHECK(back.linear_rows.size() == m.linear_rows.size());
  CHECK(back.quadratic_rows.size() == m.quadratic_rows.size());
  auto tail = [](const std::string& t) { return t.substr(t.find("VARIABLES")); };
  CHECK(tail(RenderMiqp(back)) == tail(text));
  const Assignment a = EncodeSchedule(m, Schedule({{"h1", 1}, {"h3", 2}}));
  const CheckResult direct = CheckRows(m, a);
  const CheckResult parsed = CheckRows(back, a);
  CHECK(direct.feasible == parsed.feasible);
  CHECK(direct.objective == parsed.objective);
  CHECK(direct.objective == 8);
  CHECK_THROWS_AS(ParseMiqp("garbage"), InputError);
}

TEST_CASE("random schedules: original and linearized forms agree with evaluation") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const Dataset d = testing::RandomDataset(rng, 4, 6, 3);
    const MiqpModel m = ExportMiqp(d, 0.0);
    std::vector<int> order(static_cast<size_t>(d.num_heuristics()));
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::shuffle(order.begin(), order.end(), rng);
    Schedule s;
    std::vector<std::pair<int, int64_t>> raw;
    const size_t len = std::uniform_int_distribution<size_t>(0, order.size())(rng);
    for (size_t i = 0; i < len; ++i) {
      const int h = order[i];
      const int64_t cap = m.max_iterations[static_cast<size_t>(h)];
      if (cap == 0) continue;
      const int64_t b = std::uniform_int_distribution<int64_t>(1, cap)(rng);
      s.Append(d.heuristics()[static_cast<size_t>(h)], b);
      raw.push_back({h, b});
    }
    double expected = 0.0;
    for (int n = 0; n < d.num_nodes(); ++n) expected += testing::ReferenceNodeTime(d, raw, n);
    const Assignment a = EncodeSchedule(m, s);
    const CheckResult original = CheckAssignment(m, a);
    const CheckResult rows = CheckRows(m, a);
    CHECK(original.feasible);
    CHECK(rows.feasible);
    CHECK(original.objective == static_cast<int64_t>(expected));
    CHECK(rows.objective == static_cast<int64_t>(expected));
  }
}

TEST_CASE("exact optimum encodes to a feasible assignment with the same objective") {
  std::mt19937_64 rng(88);
  for (int trial = 0; trial < 60; ++trial) {
    const Dataset d = testing::RandomDataset(rng, 4, 6, 3);
    const double alpha = std::array<double, 3>{0.0, 0.5, 1.0}[trial % 3];
    const auto unit = IterationCostProfile::Uniform(d.num_heuristics());
    const auto exact = SolveExact(d, alpha, unit);
    if (!exact) continue;
    const MiqpModel m = ExportMiqp(d, alpha);
    const Assignment a = EncodeSchedule(m, exact->schedule);
    const CheckResult r = CheckAssignment(m, a);
    CHECK(r.feasible);
    CHECK(r.objective == static_cast<int64_t>(exact->objective));
    CHECK(CheckRows(m, a).feasible);
  }
}

}  // namespace
}  // namespace hsched
