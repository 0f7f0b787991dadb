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

"""Learning schedules of branch-and-bound primal heuristics."""

from hsched._hsched import (
    Dataset,
    InputError,
    __version__,
    build_schedule,
    check_schedule_assignment,
    compare_policies,
    evaluate,
    export_miqp,
    load_dataset,
    primal_gap,
    primal_integral,
    read_dataset,
    run_cli,
    simulate_dataset,
    solve_exact,
)

__all__ = [
    "Dataset",
    "InputError",
    "__version__",
    "build_schedule",
    "check_schedule_assignment",
    "compare_policies",
    "evaluate",
    "export_miqp",
    "load_dataset",
    "primal_gap",
    "primal_integral",
    "read_dataset",
    "run_cli",
    "simulate_dataset",
    "solve_exact",
]
