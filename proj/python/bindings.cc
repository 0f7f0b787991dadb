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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "hsched/bnb_simulator.h"
#include "hsched/cli.h"
#include "hsched/dataset.h"
#include "hsched/exact_oracle.h"
#include "hsched/greedy.h"
#include "hsched/miqp.h"
#include "hsched/primal_metrics.h"
#include "hsched/schedule.h"
#include "hsched/sim_config.h"
#include "hsched/text_util.h"

namespace py = pybind11;

namespace hsched {
namespace {

using Entries = std::vector<std::pair<std::string, int64_t>>;

Schedule ToSchedule(const Entries& entries) {
  Schedule s;
  for (const auto& [h, b] : entries) s.Append(h, b);
  return s;
}

Entries FromSchedule(const Schedule& s) {
  Entries out;
  for (const auto& e : s.entries()) out.emplace_back(e.heuristic, e.budget);
  return out;
}

IterationCostProfile Costs(const Dataset& d, bool normalize) {
  return normalize ? AverageIterationCost(d) : IterationCostProfile::Uniform(d.num_heuristics());
}

py::dict EvaluationDict(const ScheduleEvaluation& e) {
  py::dict out;
  out["objective"] = e.objective;
  out["solved_nodes"] = e.solved_nodes;
  out["total_nodes"] = e.total_nodes;
  out["success_rate"] = e.success_rate;
  out["feasible"] = e.feasible;
  py::list nodes;
  for (const auto& n : e.per_node) {
    py::dict row;
    row["node"] = n.node;
    row["first_success_position"] =
        n.first_success_position ? py::cast(*n.first_success_position) : py::none();
    row["cost"] = n.cost;
    nodes.append(row);
  }
  out["per_node"] = nodes;
  return out;
}

}  // namespace
}  // namespace hsched

PYBIND11_MODULE(_hsched, m) {
  using namespace hsched;
  m.doc() = "Learning schedules of branch-and-bound primal heuristics";
  m.attr("__version__") = Version();

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly("heuristics", &Dataset::heuristics)
      .def_property_readonly("nodes", &Dataset::nodes)
      .def_property_readonly("num_observations",
                             [](const Dataset& d) { return d.observations().size(); })
      .def("tau",
           [](const Dataset& d, const std::string& h, const std::string& n) -> py::object {
             const auto& t = d.tau(d.HeuristicIndex(h), d.NodeIndex(n));
             return t ? py::cast(*t) : py::none();
           })
      .def("breakpoints",
           [](const Dataset& d, const std::string& h) { return Breakpoints(d, h); })
      .def("average_iteration_cost",
           [](const Dataset& d) { return AverageIterationCost(d).seconds_per_iteration; })
      .def("to_csv", &DatasetToCsv);

  m.def("load_dataset", [](const std::string& csv) { return LoadDataset(csv); },
        py::arg("csv"), "Parses dataset CSV text.");
  m.def("read_dataset", [](const std::string& path) { return LoadDataset(ReadFile(path)); },
        py::arg("path"));

  m.def(
      "build_schedule",
      [](const Dataset& d, bool normalize, bool allow_extension, double alpha) {
        GreedyOptions o;
        o.normalize_costs = normalize;
        o.allow_extension = allow_extension;
        o.alpha_report = alpha;
        const GreedyResult g = BuildSchedule(d, o);
        py::dict out;
        out["schedule"] = FromSchedule(g.schedule);
        out["evaluation"] = EvaluationDict(g.evaluation);
        out["alpha_met"] = g.alpha_met;
        py::list trace;
        for (const auto& st : g.trace) {
          trace.append(py::make_tuple(st.heuristic, st.budget, st.newly_solved,
                                      st.marginal_cost, st.extension));
        }
        out["trace"] = trace;
        return out;
      },
      py::arg("dataset"), py::arg("normalize") = false, py::arg("allow_extension") = true,
      py::arg("alpha") = 0.0);

  m.def(
      "evaluate",
      [](const Dataset& d, const Entries& s, double alpha, bool normalize) {
        return EvaluationDict(
            Evaluate(ToSchedule(s), d, alpha, Costs(d, normalize), {.normalize = normalize}));
      },
      py::arg("dataset"), py::arg("schedule"), py::arg("alpha") = 0.0,
      py::arg("normalize") = false);

  m.def(
      "solve_exact",
      [](const Dataset& d, double alpha, bool normalize) -> py::object {
        const auto r = SolveExact(d, alpha, Costs(d, normalize), {.normalize = normalize});
        if (!r) return py::none();
        py::dict out;
        out["schedule"] = FromSchedule(r->schedule);
        out["objective"] = r->objective;
        out["solved_nodes"] = r->solved_nodes;
        out["schedules_enumerated"] = r->schedules_enumerated;
        return out;
      },
      py::arg("dataset"), py::arg("alpha"), py::arg("normalize") = false);

  m.def(
      "export_miqp",
      [](const Dataset& d, double alpha) { return RenderMiqp(ExportMiqp(d, alpha)); },
      py::arg("dataset"), py::arg("alpha"));

  m.def(
      "check_schedule_assignment",
      [](const Dataset& d, double alpha, const Entries& s) {
        const MiqpModel model = ExportMiqp(d, alpha);
        const Assignment a = EncodeSchedule(model, ToSchedule(s));
        const CheckResult r = CheckAssignment(model, a);
        py::dict out;
        out["feasible"] = r.feasible;
        out["objective"] = r.objective;
        out["violated"] = r.violated;
        out["rows_feasible"] = CheckRows(model, a).feasible;
        return out;
      },
      py::arg("dataset"), py::arg("alpha"), py::arg("schedule"));

  m.def("primal_gap", &PrimalGap, py::arg("value"), py::arg("best_known"));
  m.def(
      "primal_integral",
      [](const std::vector<std::pair<double, double>>& events, double best_known,
         double time_limit, const std::string& sense) {
        IncumbentTimeline tl;
        tl.best_known = best_known;
        tl.sense = ParseSense(sense);
        for (const auto& [t, v] : events) tl.events.push_back({t, v});
        tl.Validate();
        return PrimalIntegral(tl, time_limit);
      },
      py::arg("events"), py::arg("best_known"), py::arg("time_limit"),
      py::arg("sense") = "min");

  m.def(
      "simulate_dataset",
      [](const std::string& config_text, const std::vector<uint64_t>& seeds) {
        const SimConfig cfg = ParseSimConfig(config_text);
        std::vector<SimInstance> instances;
        for (uint64_t s : seeds) instances.push_back(GenerateInstance(cfg, s));
        return CollectShadowDataset(instances);
      },
      py::arg("config"), py::arg("seeds"));

  m.def(
      "compare_policies",
      [](const std::string& config_text, const std::vector<uint64_t>& seeds, const Entries& s,
         std::optional<Entries> baseline, std::optional<double> time_limit) {
        const SimConfig cfg = ParseSimConfig(config_text);
        const Schedule base = baseline ? ToSchedule(*baseline) : DefaultBaseline(cfg);
        const PolicyComparison c = ComparePolicies(cfg, seeds, ToSchedule(s), base,
                                                   time_limit.value_or(cfg.time_limit_seconds));
        py::dict out;
        py::list per_seed;
        for (const auto& r : c.per_seed) {
          per_seed.append(py::make_tuple(r.seed, r.schedule_integral, r.baseline_integral,
                                         r.ratio));
        }
        out["per_seed"] = per_seed;
        out["mean_ratio"] = c.ratio.mean;
        out["std_ratio"] = c.ratio.stddev;
        return out;
      },
      py::arg("config"), py::arg("seeds"), py::arg("schedule"), py::arg("baseline") = py::none(),
      py::arg("time_limit") = py::none());

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int status = RunCli(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Runs one hsched subcommand; returns (status, stdout, stderr).");
}
