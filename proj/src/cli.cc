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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <exception>
#include <optional>
#include <sstream>

#include "hsched/bnb_simulator.h"
#include "hsched/crossval.h"
#include "hsched/dataset.h"
#include "hsched/exact_oracle.h"
#include "hsched/greedy.h"
#include "hsched/miqp.h"
#include "hsched/primal_metrics.h"
#include "hsched/schedule.h"
#include "hsched/sim_config.h"
#include "hsched/text_util.h"

#ifndef HSCHED_VERSION
#define HSCHED_VERSION "0.0.0"
#endif

namespace hsched {
namespace {

using nlohmann::ordered_json;

std::string Hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Tracks what a command read and wrote so it can be replayed.
class RunRecord {
 public:
  RunRecord(std::string command, std::vector<std::string> args)
      : command_(std::move(command)), args_(std::move(args)) {}

  std::string Read(const std::string& path) {
    std::string text = ReadFile(path);
    inputs_.push_back({{"path", path}, {"fnv1a64", Hex64(Fnv1a64(text))},
                       {"bytes", text.size()}});
    return text;
  }

  void Write(const std::string& path, const std::string& contents) {
    WriteFile(path, contents);
    outputs_.push_back({{"path", path}, {"fnv1a64", Hex64(Fnv1a64(contents))},
                        {"bytes", contents.size()}});
  }

  void AddSeed(uint64_t seed) { seeds_.push_back(seed); }
  void SetFlag(const std::string& name, ordered_json value) {
    flags_[name] = std::move(value);
  }

  // Written next to the first output file; nothing is written when the
  // command produced no files.
  void WriteManifest() const {
    if (outputs_.empty()) return;
    ordered_json m;
    m["tool"] = "hsched";
    m["version"] = Version();
    m["command"] = command_;
    m["argv"] = args_;
    m["flags"] = flags_.is_null() ? ordered_json::object() : flags_;
    m["seeds"] = seeds_;
    m["inputs"] = inputs_.is_null() ? ordered_json::array() : inputs_;
    m["outputs"] = outputs_;
    WriteFile(outputs_.front()["path"].get<std::string>() + ".manifest.json",
              m.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::vector<std::string> args_;
  ordered_json inputs_ = ordered_json::array();
  ordered_json outputs_ = ordered_json::array();
  ordered_json flags_ = ordered_json::object();
  std::vector<uint64_t> seeds_;
};

void CheckAlpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("--alpha must lie in [0, 1]");
}

// "1,2,5" or "1..20" or a mix ("1..3,7").
std::vector<uint64_t> ParseSeedList(const std::string& text) {
  std::vector<uint64_t> seeds;
  for (auto part : SplitFields(text, ',')) {
    part = Trim(part);
    if (part.empty()) continue;
    const size_t dots = part.find("..");
    if (dots == std::string_view::npos) {
      auto v = ParseInt64(part);
      if (!v || *v < 0) throw InputError("bad seed '" + std::string(part) + "'");
      seeds.push_back(static_cast<uint64_t>(*v));
      continue;
    }
    auto lo = ParseInt64(part.substr(0, dots));
    auto hi = ParseInt64(part.substr(dots + 2));
    if (!lo || !hi || *lo < 0 || *hi < *lo) {
      throw InputError("bad seed range '" + std::string(part) + "'");
    }
    for (int64_t s = *lo; s <= *hi; ++s) seeds.push_back(static_cast<uint64_t>(s));
  }
  if (seeds.empty()) throw InputError("seed list is empty");
  return seeds;
}

struct Options {
  std::string data, schedule, baseline, config, configs, timeline, out, manifest;
  double alpha = 0.0;
  bool normalize = false;
  bool no_extension = false;
  int max_heuristics = ExactLimits{}.max_heuristics;
  int max_breakpoints = ExactLimits{}.max_breakpoints_per_heuristic;
  int64_t enumeration_budget = ExactLimits{}.enumeration_budget;
  int instances = 0;
  uint64_t seed = 0;
  std::string seeds;
  double time_limit = 0.0;
  double best_known = 0.0;
  std::string sense = "min";
  int folds = 2;
};

int Build(const Options& o, RunRecord& rec, std::ostream& out) {
  CheckAlpha(o.alpha);
  const Dataset d = LoadDataset(rec.Read(o.data));
  GreedyOptions g;
  g.allow_extension = !o.no_extension;
  g.normalize_costs = o.normalize;
  g.alpha_report = o.alpha;
  rec.SetFlag("alpha", o.alpha);
  rec.SetFlag("normalize", o.normalize);
  rec.SetFlag("extension", g.allow_extension);
  const GreedyResult r = BuildSchedule(d, g);
  out << FormatTrace(r.trace);
  out << "schedule " << ToString(r.schedule) << "\n";
  out << FormatEvaluation(r.evaluation);
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  if (!o.out.empty()) rec.Write(o.out, ScheduleToCsv(r.schedule));
  else out << ScheduleToCsv(r.schedule);
  return kExitOk;
}

int Eval(const Options& o, RunRecord& rec, std::ostream& out) {
  CheckAlpha(o.alpha);
  const Dataset d = LoadDataset(rec.Read(o.data));
  const Schedule s = LoadSchedule(rec.Read(o.schedule));
  rec.SetFlag("alpha", o.alpha);
  rec.SetFlag("normalize", o.normalize);
  const auto costs = o.normalize ? AverageIterationCost(d)
                                 : IterationCostProfile::Uniform(d.num_heuristics());
  const ScheduleEvaluation e = Evaluate(s, d, o.alpha, costs, {o.normalize});
  std::string report = "schedule " + ToString(s) + "\n" + FormatEvaluation(e);
  out << report;
  if (!o.out.empty()) {
    std::string csv = "node,first_success_position,cost\n";
    for (const auto& n : e.per_node) {
      csv += n.node + "," +
             (n.first_success_position ? std::to_string(*n.first_success_position) : "") +
             "," + FormatNumber(n.cost) + "\n";
    }
    rec.Write(o.out, csv);
  }
  return kExitOk;
}

int Exact(const Options& o, RunRecord& rec, std::ostream& out) {
  CheckAlpha(o.alpha);
  const Dataset d = LoadDataset(rec.Read(o.data));
  ExactLimits limits;
  limits.max_heuristics = o.max_heuristics;
  limits.max_breakpoints_per_heuristic = o.max_breakpoints;
  limits.enumeration_budget = o.enumeration_budget;
  rec.SetFlag("alpha", o.alpha);
  rec.SetFlag("normalize", o.normalize);
  rec.SetFlag("max_heuristics", o.max_heuristics);
  rec.SetFlag("max_breakpoints", o.max_breakpoints);
  const auto costs = o.normalize ? AverageIterationCost(d)
                                 : IterationCostProfile::Uniform(d.num_heuristics());
  const auto r = SolveExact(d, o.alpha, costs, {o.normalize}, limits);
  if (!r) {
    out << "INFEASIBLE\n";
    return kExitOk;
  }
  out << "schedule " << ToString(r->schedule) << "\n";
  out << "objective " << FormatNumber(r->objective) << "\n";
  out << "solved " << r->solved_nodes << "/" << d.num_nodes() << "\n";
  out << "enumerated " << r->schedules_enumerated << "\n";
  if (!o.out.empty()) rec.Write(o.out, ScheduleToCsv(r->schedule));
  return kExitOk;
}

int ExportModel(const Options& o, RunRecord& rec, std::ostream& out) {
  CheckAlpha(o.alpha);
  const Dataset d = LoadDataset(rec.Read(o.data));
  rec.SetFlag("alpha", o.alpha);
  const MiqpModel m = ExportMiqp(d, o.alpha);
  const std::string text = RenderMiqp(m);
  if (o.out.empty()) {
    out << text;
    return kExitOk;
  }
  rec.Write(o.out, text);
  size_t bilinear = 0;
  for (const auto& r : m.quadratic_rows) bilinear += r.bilinear.size();
  out << "variables " << m.variables.size() << "\n"
          << "linear rows " << m.linear_rows.size() << "\n"
          << "quadratic rows " << m.quadratic_rows.size() << " (" << bilinear
          << " bilinear terms)\n";
  return kExitOk;
}

int Simulate(const Options& o, RunRecord& rec, std::ostream& out) {
  SimConfig cfg = ParseSimConfig(rec.Read(o.config));
  if (o.instances > 0) cfg.instances = o.instances;
  rec.SetFlag("instances", cfg.instances);
  rec.AddSeed(o.seed);
  std::vector<SimInstance> insts;
  for (int i = 0; i < cfg.instances; ++i) {
    insts.push_back(GenerateInstance(cfg, InstanceSeed(o.seed, 0, i)));
  }
  const Dataset d = CollectShadowDataset(insts);
  const auto costs = AverageIterationCost(d);
  out << "instances " << cfg.instances << "\n"
      << "nodes " << d.num_nodes() << "\n"
      << "observations " << d.observations().size() << "\n";
  for (int h = 0; h < d.num_heuristics(); ++h) {
    int solved = 0;
    for (int n = 0; n < d.num_nodes(); ++n) solved += d.tau(h, n).has_value();
    out << "heuristic " << d.heuristics()[static_cast<size_t>(h)] << " success_rate "
        << FormatNumber(d.num_nodes() ? static_cast<double>(solved) / d.num_nodes() : 0.0)
        << " seconds_per_iteration " << FormatNumber(costs[h]) << "\n";
  }
  if (!o.out.empty()) rec.Write(o.out, DatasetToCsv(d));
  else out << DatasetToCsv(d);
  return kExitOk;
}

int Run(const Options& o, RunRecord& rec, std::ostream& out) {
  const SimConfig cfg = ParseSimConfig(rec.Read(o.config));
  const Schedule s = LoadSchedule(rec.Read(o.schedule));
  const double limit = o.time_limit > 0 ? o.time_limit : cfg.time_limit_seconds;
  rec.SetFlag("time_limit", limit);
  rec.AddSeed(o.seed);
  const SimInstance inst = GenerateInstance(cfg, o.seed);
  const RunTrace t = RunWithSchedule(inst, s, limit);
  int successes = 0;
  double seconds = 0.0;
  for (const auto& n : t.nodes) {
    successes += n.success_position.has_value();
    seconds += n.seconds;
  }
  out << "schedule " << ToString(s) << "\n"
      << "nodes_visited " << t.nodes.size() << "\n"
      << "incumbents " << t.timeline.events.size() << "\n"
      << "heuristic_seconds " << FormatNumber(seconds) << "\n"
      << "primal_integral " << FormatNumber(PrimalIntegral(t.timeline, limit)) << "\n";
  if (!o.out.empty()) {
    std::string csv = "time_seconds,objective_value\n";
    for (const auto& e : t.timeline.events) {
      csv += FormatExact(e.time_seconds) + "," + FormatExact(e.objective_value) + "\n";
    }
    rec.Write(o.out, csv);
  }
  return kExitOk;
}

int Compare(const Options& o, RunRecord& rec, std::ostream& out) {
  const SimConfig cfg = ParseSimConfig(rec.Read(o.config));
  const Schedule s = LoadSchedule(rec.Read(o.schedule));
  const Schedule baseline =
      o.baseline.empty() ? DefaultBaseline(cfg) : LoadSchedule(rec.Read(o.baseline));
  const double limit = o.time_limit > 0 ? o.time_limit : cfg.time_limit_seconds;
  rec.SetFlag("time_limit", limit);
  const auto seeds = ParseSeedList(o.seeds);
  for (auto seed : seeds) rec.AddSeed(seed);
  const PolicyComparison c = ComparePolicies(cfg, seeds, s, baseline, limit);
  out << "schedule " << ToString(s) << "\n" << "baseline " << ToString(baseline) << "\n";
  out << FormatComparison(c);
  if (!o.out.empty()) rec.Write(o.out, ComparisonToCsv(c));
  return kExitOk;
}

int Metrics(const Options& o, RunRecord& rec, std::ostream& out) {
  const IncumbentTimeline tl =
      LoadTimeline(rec.Read(o.timeline), o.best_known, ParseSense(o.sense));
  rec.SetFlag("best_known", o.best_known);
  rec.SetFlag("sense", o.sense);
  rec.SetFlag("time_limit", o.time_limit);
  const double p = PrimalIntegral(tl, o.time_limit);
  const GapFunction gf = ComputeGapFunction(tl);
  std::string report;
  report += "incumbents " + std::to_string(tl.events.size()) + "\n";
  for (const auto& seg : gf.segments) {
    report += "gap_from " + FormatNumber(seg.start) + " " + FormatNumber(seg.gap) + "\n";
  }
  report += "primal_integral " + FormatNumber(p) + "\n";
  report += "primal_integral_normalized " + FormatNumber(p / o.time_limit) + "\n";
  out << report;
  if (!o.out.empty()) rec.Write(o.out, report);
  return kExitOk;
}

int CrossVal(const Options& o, RunRecord& rec, std::ostream& out) {
  std::vector<LabeledConfig> configs;
  for (auto part : SplitFields(o.configs, ',')) {
    const std::string path(Trim(part));
    if (path.empty()) continue;
    std::string label = path;
    if (auto slash = label.find_last_of('/'); slash != std::string::npos) {
      label = label.substr(slash + 1);
    }
    if (auto dot = label.find_last_of('.'); dot != std::string::npos && dot > 0) {
      label = label.substr(0, dot);
    }
    configs.push_back({label, ParseSimConfig(rec.Read(path))});
  }
  CrossValOptions opts;
  opts.folds = o.folds;
  opts.seed = o.seed;
  if (o.time_limit > 0) opts.time_limit = o.time_limit;
  rec.SetFlag("folds", o.folds);
  rec.AddSeed(o.seed);
  const CrossValReport r = CrossValidate(configs, opts);
  out << FormatCrossVal(r);
  if (!o.out.empty()) rec.Write(o.out, CrossValToCsv(r));
  return kExitOk;
}

int Replay(const Options& o, std::ostream& out, std::ostream& err) {
  const ordered_json m = ordered_json::parse(ReadFile(o.manifest), nullptr, false);
  if (m.is_discarded() || !m.contains("argv") || m.value("tool", "") != "hsched") {
    throw InputError("'" + o.manifest + "' is not an hsched manifest");
  }
  for (const auto& in : m["inputs"]) {
    const std::string path = in["path"].get<std::string>();
    if (Hex64(Fnv1a64(ReadFile(path))) != in["fnv1a64"].get<std::string>()) {
      throw InputError("input '" + path + "' changed since the manifest was written");
    }
  }
  const auto args = m["argv"].get<std::vector<std::string>>();
  if (!args.empty() && args.front() == "replay") {
    throw InputError("a manifest cannot replay another replay");
  }
  std::ostringstream sink;
  const int status = RunCli(args, sink, err);
  if (status != kExitOk) return status;
  bool identical = true;
  for (const auto& o_entry : m["outputs"]) {
    const std::string path = o_entry["path"].get<std::string>();
    const bool same =
        Hex64(Fnv1a64(ReadFile(path))) == o_entry["fnv1a64"].get<std::string>();
    out << (same ? "identical " : "DIFFERS ") << path << "\n";
    identical = identical && same;
  }
  return identical ? kExitOk : kExitInternalError;
}

}  // namespace

const char* Version() { return HSCHED_VERSION; }

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Learn and evaluate schedules of branch-and-bound primal heuristics",
               "hsched"};
  app.set_version_flag("--version", std::string(Version()));
  app.require_subcommand(1);
  Options o;

  auto add_alpha = [&](CLI::App* c) {
    c->add_option("--alpha", o.alpha, "minimum fraction of nodes to solve");
  };
  auto add_out = [&](CLI::App* c, const char* what) {
    c->add_option("--out", o.out, what);
  };

  CLI::App* build = app.add_subcommand("build", "greedy schedule from a dataset");
  build->add_option("--data", o.data, "dataset CSV")->required();
  add_alpha(build);
  build->add_flag("--normalize", o.normalize, "weight iterations by average seconds");
  build->add_flag("--no-extension", o.no_extension, "unmodified greedy (no extension)");
  add_out(build, "schedule CSV to write");

  CLI::App* eval = app.add_subcommand("eval", "evaluate a schedule on a dataset");
  eval->add_option("--data", o.data, "dataset CSV")->required();
  eval->add_option("--schedule", o.schedule, "schedule CSV")->required();
  add_alpha(eval);
  eval->add_flag("--normalize", o.normalize, "weight iterations by average seconds");
  add_out(eval, "per-node CSV to write");

  CLI::App* exact = app.add_subcommand("exact", "exhaustive optimum for small data");
  exact->add_option("--data", o.data, "dataset CSV")->required();
  add_alpha(exact);
  exact->add_option("--max-heuristics", o.max_heuristics);
  exact->add_option("--max-breakpoints", o.max_breakpoints);
  exact->add_option("--enumeration-budget", o.enumeration_budget);
  exact->add_flag("--normalize", o.normalize, "weight iterations by average seconds");
  add_out(exact, "schedule CSV to write");

  CLI::App* exportm = app.add_subcommand("export-miqp", "write the MIQP model");
  exportm->add_option("--data", o.data, "dataset CSV")->required();
  add_alpha(exportm);
  add_out(exportm, "model text to write");

  CLI::App* simulate = app.add_subcommand("simulate", "collect a shadow-mode dataset");
  simulate->add_option("--config", o.config, "simulator config")->required();
  simulate->add_option("--instances", o.instances, "overrides the config");
  simulate->add_option("--seed", o.seed);
  add_out(simulate, "dataset CSV to write");

  CLI::App* run = app.add_subcommand("run", "replay a schedule on one instance");
  run->add_option("--config", o.config, "simulator config")->required();
  run->add_option("--schedule", o.schedule, "schedule CSV")->required();
  run->add_option("--seed", o.seed);
  run->add_option("--time-limit", o.time_limit, "seconds; defaults to the config");
  add_out(run, "timeline CSV to write");

  CLI::App* compare = app.add_subcommand("compare", "relative primal integral vs. a baseline");
  compare->add_option("--config", o.config, "simulator config")->required();
  compare->add_option("--schedule", o.schedule, "schedule CSV")->required();
  compare->add_option("--baseline", o.baseline,
                      "schedule CSV; default: config order at max iterations");
  compare->add_option("--seeds", o.seeds, "e.g. 1..20 or 1,2,3")->required();
  compare->add_option("--time-limit", o.time_limit, "seconds; defaults to the config");
  add_out(compare, "per-seed CSV to write");

  CLI::App* metrics = app.add_subcommand("metrics", "primal gap and integral of a timeline");
  metrics->add_option("--timeline", o.timeline, "timeline CSV")->required();
  metrics->add_option("--best-known", o.best_known)->required();
  metrics->add_option("--sense", o.sense, "min or max");
  metrics->add_option("--time-limit", o.time_limit)->required();
  add_out(metrics, "report to write");

  CLI::App* crossval = app.add_subcommand("crossval", "train/test matrix over configs");
  crossval->add_option("--configs", o.configs, "comma-separated config files")->required();
  crossval->add_option("--folds", o.folds);
  crossval->add_option("--seed", o.seed);
  crossval->add_option("--time-limit", o.time_limit, "overrides every config");
  add_out(crossval, "matrix CSV to write");

  CLI::App* replay = app.add_subcommand("replay", "re-run a manifest and compare outputs");
  replay->add_option("--manifest", o.manifest)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << Version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInputError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == replay) {
    try {
      return Replay(o, out, err);
    } catch (const InputError& e) {
      err << "error: " << e.what() << "\n";
      return kExitInputError;
    } catch (const std::exception& e) {
      err << "internal error: " << e.what() << "\n";
      return kExitInternalError;
    }
  }

  RunRecord rec(chosen->get_name(), args);
  std::ostringstream report;
  try {
    int status = kExitOk;
    if (chosen == build) status = Build(o, rec, report);
    else if (chosen == eval) status = Eval(o, rec, report);
    else if (chosen == exact) status = Exact(o, rec, report);
    else if (chosen == exportm) status = ExportModel(o, rec, report);
    else if (chosen == simulate) status = Simulate(o, rec, report);
    else if (chosen == run) status = Run(o, rec, report);
    else if (chosen == compare) status = Compare(o, rec, report);
    else if (chosen == metrics) status = Metrics(o, rec, report);
    else if (chosen == crossval) status = CrossVal(o, rec, report);
    rec.WriteManifest();
    out << report.str();
    return status;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace hsched
