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

#include <doctest.h>

#include "hsched/text_util.h"
#include "test_support.h"

namespace hsched {
namespace {

std::vector<LabeledConfig> TwoConfigs() {
  SimConfig a = testing::PlantedConfig();
  a.nodes_min = 30;
  a.nodes_max = 40;
  a.instances = 4;
  a.time_limit_seconds = 20.0;
  SimConfig b = a;
  // Same heuristics, different behaviour and declaration order.
  std::swap(b.heuristics[0], b.heuristics[2]);
  b.heuristics[0].success_probability = 0.2;
  b.heuristics[2].success_probability = 0.9;
  return {{"planted", a}, {"shifted", b}};
}

TEST_CASE("crossval report shape and determinism") {
  const auto configs = TwoConfigs();
  const CrossValOptions opts{.folds = 2, .seed = 7};
  const CrossValReport r = CrossValidate(configs, opts);
  CHECK(r.labels == std::vector<std::string>{"planted", "shifted"});
  REQUIRE(r.cells.size() == 2);
  for (const auto& row : r.cells) {
    REQUIRE(row.size() == 2);
    for (const auto& c : row) {
      CHECK(c.count == 4);
      CHECK(c.mean > 0.0);
    }
  }
  for (const auto& b : r.baseline) {
    CHECK(b.count == 4);
    CHECK(b.mean <= 20.0);
  }
  const CrossValReport again = CrossValidate(configs, opts);
  CHECK(FormatCrossVal(r) == FormatCrossVal(again));
  CHECK(CrossValToCsv(r) == CrossValToCsv(again));
  CHECK(FormatCrossVal(r).find("baseline P(T)") != std::string::npos);
  CHECK(CrossValToCsv(r).find("planted") != std::string::npos);

  const CrossValReport other = CrossValidate(configs, {.folds = 2, .seed = 8});
  CHECK(CrossValToCsv(other) != CrossValToCsv(r));
}

TEST_CASE("crossval time limit override") {
  const auto configs = TwoConfigs();
  const CrossValReport r =
      CrossValidate(configs, {.folds = 2, .seed = 1, .time_limit = 5.0});
  for (const auto& b : r.baseline) CHECK(b.mean <= 5.0);
}

TEST_CASE("crossval rejects bad setups") {
  auto configs = TwoConfigs();
  CHECK_THROWS_AS(CrossValidate({configs[0]}, {}), InputError);
  CHECK_THROWS_AS(CrossValidate(configs, {.folds = 1}), InputError);
  CHECK_THROWS_AS(CrossValidate(configs, {.folds = 5}), InputError);
  configs[1].config.heuristics.pop_back();
  CHECK_THROWS_AS(CrossValidate(configs, {}), InputError);
}

TEST_CASE("instance seeds differ across configs and instances") {
  CHECK(InstanceSeed(1, 0, 0) != InstanceSeed(1, 1, 0));
  CHECK(InstanceSeed(1, 0, 0) != InstanceSeed(1, 0, 1));
  CHECK(InstanceSeed(1, 0, 0) == InstanceSeed(1, 0, 0));
}

}  // namespace
}  // namespace hsched
