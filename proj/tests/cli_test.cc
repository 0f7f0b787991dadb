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

#include "hsched/cli.h"

#include <doctest.h>

#include <filesystem>

#include "cli_support.h"
#include "hsched/schedule.h"
#include "hsched/text_util.h"

namespace hsched {
namespace {

using testing::RunTool;

const testing::Workspace& Ws() {
  static const testing::Workspace ws(HSCHED_TEST_TMPDIR);
  return ws;
}

std::string P(const std::string& name) { return Ws().Path(name); }

TEST_CASE("version and usage") {
  const auto v = RunTool({"--version"});
  CHECK(v.status == kExitOk);
  CHECK(v.out == std::string(Version()) + "\n");
  CHECK(RunTool({}).status == kExitInputError);
  CHECK(RunTool({"frobnicate"}).status == kExitInputError);
  CHECK(RunTool({"build"}).status == kExitInputError);
  CHECK(RunTool({"build", "--help"}).status == kExitOk);
}

TEST_CASE("build, eval and exact on the worked example") {
  const auto b = RunTool({"build", "--data", P("worked.csv"), "--alpha", "0.9", "--out",
                          P("g.csv")});
  REQUIRE(b.status == kExitOk);
  CHECK(LoadSchedule(ReadFile(P("g.csv"))) == Schedule({{"h1", 1}, {"h2", 3}}));
  CHECK(std::filesystem::exists(P("g.csv.manifest.json")));

  const auto e = RunTool({"eval", "--data", P("worked.csv"), "--schedule", P("g.csv"),
                          "--alpha", "1"});
  REQUIRE(e.status == kExitOk);
  CHECK(e.out.find("FEASIBLE") != std::string::npos);
  CHECK(e.out.find("9") != std::string::npos);

  const auto x = RunTool({"exact", "--data", P("worked.csv"), "--alpha", "1", "--out",
                          P("x.csv")});
  REQUIRE(x.status == kExitOk);
  CHECK(LoadSchedule(ReadFile(P("x.csv"))) == Schedule({{"h1", 1}, {"h2", 3}}));

  const auto plain = RunTool({"build", "--data", P("worked.csv"), "--no-extension"});
  CHECK(plain.status == kExitOk);
}

TEST_CASE("input errors exit with status 1") {
  CHECK(RunTool({"build", "--data", P("missing.csv")}).status == kExitInputError);
  CHECK(RunTool({"build", "--data", P("worked.csv"), "--alpha", "2"}).status ==
        kExitInputError);
  WriteFile(P("broken.csv"), std::string(kDatasetHeader) + "\nh,N,5,2,\n");
  const auto broken = RunTool({"build", "--data", P("broken.csv")});
  CHECK(broken.status == kExitInputError);
  CHECK(broken.err.find("row 2") != std::string::npos);
  CHECK(RunTool({"exact", "--data", P("worked.csv"), "--max-heuristics", "1"}).status ==
        kExitInputError);
  CHECK(RunTool({"metrics", "--timeline", P("timeline.csv"), "--best-known", "100",
                 "--time-limit", "0"})
            .status == kExitInputError);
  CHECK(RunTool({"compare", "--config", P("planted.cfg"), "--schedule", P("g.csv"),
                 "--seeds", "5..1"})
            .status == kExitInputError);
}

TEST_CASE("export-miqp writes a parseable model") {
  const auto r = RunTool({"export-miqp", "--data", P("worked.csv"), "--alpha", "0.5",
                          "--out", P("model.miqp")});
  REQUIRE(r.status == kExitOk);
  const std::string text = ReadFile(P("model.miqp"));
  CHECK(text.find("QUADRATIC") != std::string::npos);
}

TEST_CASE("simulate, build, run, compare, metrics") {
  REQUIRE(RunTool({"simulate", "--config", P("planted.cfg"), "--instances", "2", "--seed",
                   "3", "--out", P("sim.csv")})
              .status == kExitOk);
  const Dataset d = LoadDataset(ReadFile(P("sim.csv")));
  CHECK(d.num_heuristics() == 3);
  CHECK(d.num_nodes() >= 300);

  REQUIRE(RunTool({"build", "--data", P("sim.csv"), "--normalize", "--out", P("sim_g.csv")})
              .status == kExitOk);
  const Schedule learned = LoadSchedule(ReadFile(P("sim_g.csv")));
  CHECK(learned.entries().front().heuristic == "quick_round");

  REQUIRE(RunTool({"run", "--config", P("planted.cfg"), "--schedule", P("sim_g.csv"),
                   "--seed", "11", "--out", P("tl.csv")})
              .status == kExitOk);
  const auto m = RunTool({"metrics", "--timeline", P("tl.csv"), "--best-known", "100",
                          "--time-limit", "60"});
  REQUIRE(m.status == kExitOk);
  CHECK(m.out.find("primal_integral ") != std::string::npos);

  const auto c = RunTool({"compare", "--config", P("planted.cfg"), "--schedule",
                          P("sim_g.csv"), "--seeds", "1..4", "--out", P("cmp.csv")});
  REQUIRE(c.status == kExitOk);
  CHECK(c.out.find("relative primal integral") != std::string::npos);
}

TEST_CASE("metrics on a known timeline") {
  const auto m = RunTool({"metrics", "--timeline", P("timeline.csv"), "--best-known", "100",
                          "--time-limit", "8", "--out", P("m.txt")});
  REQUIRE(m.status == kExitOk);
  CHECK(m.out.find("primal_integral 3\n") != std::string::npos);
  CHECK(ReadFile(P("m.txt")) == m.out);
}

TEST_CASE("crossval prints a matrix") {
  const auto r = RunTool({"crossval", "--configs", P("planted.cfg") + "," + P("shifted.cfg"),
                          "--folds", "2", "--seed", "1", "--time-limit", "20", "--out",
                          P("cv.csv")});
  REQUIRE(r.status == kExitOk);
  CHECK(r.out.find("planted") != std::string::npos);
  CHECK(r.out.find("shifted") != std::string::npos);
}

TEST_CASE("replay verifies manifests") {
  REQUIRE(RunTool({"build", "--data", P("worked.csv"), "--out", P("r.csv")}).status ==
          kExitOk);
  const auto ok = RunTool({"replay", "--manifest", P("r.csv.manifest.json")});
  CHECK(ok.status == kExitOk);
  CHECK(ok.out.find("identical") != std::string::npos);

  // A changed input is refused.
  WriteFile(P("worked2.csv"), DatasetToCsv(testing::WorkedExample()));
  REQUIRE(RunTool({"build", "--data", P("worked2.csv"), "--out", P("r2.csv")}).status ==
          kExitOk);
  WriteFile(P("worked2.csv"), DatasetToCsv(testing::PathologicalExample()));
  CHECK(RunTool({"replay", "--manifest", P("r2.csv.manifest.json")}).status ==
        kExitInputError);
  CHECK(RunTool({"replay", "--manifest", P("worked.csv")}).status == kExitInputError);
}

}  // namespace
}  // namespace hsched
