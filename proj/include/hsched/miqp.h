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

// Mixed-integer quadratic formulation of the scheduling problem.
//
// Variable families (H heuristics, positions 0..|H|, nodes N):
//   x[h][p]   binary   h runs at position p (p = 0: not scheduled)
//   t[h]      integer  iteration budget of h, in [0, T_h]
//   p[h]      integer  position of h, in [0, |H|]
//   s[N][h]   binary   h would solve N within its budget
//   sN[N]     binary   the schedule solves N
//   pmin[N]   integer  position of the first solver of N, |H| if none
//   z[N][h]   binary   h runs before pmin[N]
//   f[N][h]   binary   h runs at pmin[N]
//   tN[N]     integer  iterations spent at N, in [1, 1 + sum T_h]
// plus two auxiliary families introduced by the linearization:
//   y[N][h]   binary   selects the heuristic attaining pmin[N]
//   q[N][h]   integer  z[N][h] * t[h]
//
// T_h is the largest finite iterations-to-solution of h (0 if h never
// succeeds). The exported objective is in raw iterations.

#ifndef HSCHED_MIQP_H_
#define HSCHED_MIQP_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hsched/dataset.h"
#include "hsched/schedule.h"

namespace hsched {

enum class VarKind { kBinary, kInteger };
enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct MiqpVariable {
  std::string name;
  VarKind kind = VarKind::kBinary;
  int64_t lower = 0;
  int64_t upper = 1;
  std::string family;  // "x", "t", ..., "y", "q"
};

struct LinearTerm {
  double coef;
  int var;
};

struct BilinearTerm {
  double coef;
  int var1;
  int var2;
};

struct MiqpRow {
  std::string id;
  std::vector<LinearTerm> linear;
  std::vector<BilinearTerm> bilinear;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

struct MiqpModel {
  // Instance data; empty for models read back from text.
  std::vector<std::string> heuristics;
  std::vector<std::string> nodes;
  std::vector<int64_t> max_iterations;      // T_h
  std::vector<std::vector<Iterations>> tau;  // tau[h][n]
  double alpha = 0.0;

  std::vector<MiqpVariable> variables;
  std::unordered_map<std::string, int> index;
  std::vector<LinearTerm> objective;  // minimized
  std::vector<MiqpRow> linear_rows;
  std::vector<MiqpRow> quadratic_rows;
  std::vector<std::string> comments;

  int AddVariable(MiqpVariable v);
  int Var(std::string_view name) const;  // throws InputError if absent
  size_t CountFamily(std::string_view family) const;
};

// Throws InputError if the dataset has no heuristics or alpha is outside
// [0, 1].
MiqpModel ExportMiqp(const Dataset& d, double alpha);

// Line-oriented text with sections COMMENTS, VARIABLES, OBJECTIVE, LINEAR,
// QUADRATIC, terminated by END. Terms are written as "<coef> <var>" or
// "<coef> <var>*<var>"; rows as "<id>: <terms> <sense> <rhs>".
std::string RenderMiqp(const MiqpModel& m);

// Reads RenderMiqp output back (variables, objective and rows only).
MiqpModel ParseMiqp(std::string_view text);

struct Assignment {
  std::map<std::string, int64_t> values;

  int64_t at(const std::string& name) const;  // throws InputError if absent
};

struct CheckResult {
  bool feasible = false;
  int64_t objective = 0;
  std::vector<std::string> violated;  // constraint ids
};

// Canonical assignment of a schedule, including the auxiliary families.
// Scheduled heuristics take positions 1..k in schedule order.
Assignment EncodeSchedule(const MiqpModel& m, const Schedule& s);

// Re-evaluates every constraint in its original max/min/indicator form,
// independent of the linearization. Requires the instance data of an
// exported model; auxiliary families are ignored. Throws InputError if a
// variable of the original families is missing.
CheckResult CheckAssignment(const MiqpModel& m, const Assignment& a);

// Substitutes the assignment into the bounds and the linearized rows.
CheckResult CheckRows(const MiqpModel& m, const Assignment& a);

}  // namespace hsched

#endif  // HSCHED_MIQP_H_
