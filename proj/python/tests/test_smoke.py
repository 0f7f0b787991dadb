# Copyright 2026 The hsched Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the Python bindings."""

import pytest

import hsched

WORKED = """heuristic,node,iterations_to_solution,iterations_executed,duration_seconds
h1,N1,1,1,
h1,N2,inf,5,
h1,N3,inf,5,
h2,N1,4,4,
h2,N2,3,3,
h2,N3,3,3,
h3,N1,inf,5,
h3,N2,4,4,
h3,N3,2,2,
"""

PLANTED = """instances = 2
nodes_min = 40
nodes_max = 40
node_interarrival_seconds = 0.5
optimum_value = 100
time_limit_seconds = 30
heuristic.deep_dive.class = diving
heuristic.deep_dive.success_probability = 0.3
heuristic.deep_dive.geometric_rate = 0.05
heuristic.deep_dive.max_iterations = 200
heuristic.deep_dive.seconds_per_iteration = 0.05
heuristic.quick_round.class = diving
heuristic.quick_round.success_probability = 0.9
heuristic.quick_round.geometric_rate = 0.5
heuristic.quick_round.max_iterations = 10
heuristic.quick_round.seconds_per_iteration = 0.01
"""


def test_dataset_and_greedy():
    d = hsched.load_dataset(WORKED)
    assert d.heuristics == ["h1", "h2", "h3"]
    assert d.tau("h1", "N2") is None
    assert d.breakpoints("h2") == [3, 4]
    g = hsched.build_schedule(d)
    assert g["schedule"] == [("h1", 1), ("h2", 3)]
    assert g["evaluation"]["objective"] == 9.0
    assert g["evaluation"]["solved_nodes"] == 3


def test_evaluate_and_exact():
    d = hsched.load_dataset(WORKED)
    e = hsched.evaluate(d, [("h1", 1), ("h2", 3)], alpha=1.0)
    assert e["feasible"] and e["objective"] == 9.0
    r = hsched.solve_exact(d, 1.0)
    assert r["schedule"] == [("h1", 1), ("h2", 3)]
    assert r["objective"] == 9.0
    assert hsched.solve_exact(d, 0.0)["schedule"] == []


def test_miqp():
    d = hsched.load_dataset(WORKED)
    assert "QUADRATIC" in hsched.export_miqp(d, 0.5)
    c = hsched.check_schedule_assignment(d, 1.0, [("h1", 1), ("h2", 3)])
    assert c["feasible"] and c["rows_feasible"] and c["objective"] == 9


def test_metrics():
    assert hsched.primal_gap(50.0, 100.0) == 0.5
    assert hsched.primal_gap(-1.0, 1.0) == 1.0
    assert hsched.primal_integral([], 10.0, 100.0) == 100.0
    assert hsched.primal_integral([(2.0, 200.0), (4.0, 100.0)], 100.0, 8.0) == 3.0


def test_simulation():
    d = hsched.simulate_dataset(PLANTED, [1, 2])
    assert d.num_observations == 160
    g = hsched.build_schedule(d, normalize=True)
    assert g["schedule"][0][0] == "quick_round"
    same = hsched.compare_policies(PLANTED, [1, 2, 3], g["schedule"], baseline=g["schedule"])
    assert all(row[3] == 1.0 for row in same["per_seed"])


def test_errors_and_cli():
    with pytest.raises(ValueError):
        hsched.load_dataset("nonsense\n")
    with pytest.raises(hsched.InputError):
        hsched.build_schedule(hsched.load_dataset(WORKED.splitlines()[0] + "\n"))
    status, out, _ = hsched.run_cli(["--version"])
    assert status == 0 and out.strip() == hsched.__version__
