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

#include <algorithm>
#include <cmath>
#include <limits>

#include "hsched/text_util.h"

namespace hsched {
namespace {

std::string Name1(std::string_view family, std::string_view a) {
  return std::string(family) + "[" + std::string(a) + "]";
}

std::string Name2(std::string_view family, std::string_view a,
                  std::string_view b) {
  return Name1(family, a) + "[" + std::string(b) + "]";
}

std::string XName(const std::string& h, int p) {
  return Name2("x", h, std::to_string(p));
}

MiqpRow Row(std::string id, RowSense sense, double rhs) {
  MiqpRow r;
  r.id = std::move(id);
  r.sense = sense;
  r.rhs = rhs;
  return r;
}

const char* SenseToken(RowSense s) {
  switch (s) {
    case RowSense::kLessEqual: return "<=";
    case RowSense::kGreaterEqual: return ">=";
    case RowSense::kEqual: return "=";
  }
  return "?";
}

std::string Coef(double c) {
  std::string s = FormatExact(c);
  return c < 0 ? s : "+" + s;
}

constexpr double kRowTolerance = 1e-9;

}  // namespace

int MiqpModel::AddVariable(MiqpVariable v) {
  const int id = static_cast<int>(variables.size());
  if (!index.emplace(v.name, id).second) {
    throw InputError("duplicate MIQP variable '" + v.name + "'");
  }
  variables.push_back(std::move(v));
  return id;
}

int MiqpModel::Var(std::string_view name) const {
  auto it = index.find(std::string(name));
  if (it == index.end()) {
    throw InputError("unknown MIQP variable '" + std::string(name) + "'");
  }
  return it->second;
}

size_t MiqpModel::CountFamily(std::string_view family) const {
  return static_cast<size_t>(
      std::count_if(variables.begin(), variables.end(),
                    [&](const MiqpVariable& v) { return v.family == family; }));
}

MiqpModel ExportMiqp(const Dataset& d, double alpha) {
  if (d.num_heuristics() == 0) {
    throw InputError("cannot export a model without heuristics");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InputError("alpha must lie in [0, 1]");
  }
  MiqpModel m;
  m.heuristics = d.heuristics();
  m.nodes = d.nodes();
  m.alpha = alpha;
  const int H = d.num_heuristics();
  const int num_nodes = d.num_nodes();
  const auto& hs = m.heuristics;
  const auto& ns = m.nodes;

  m.tau.assign(static_cast<size_t>(H), {});
  int64_t total_max = 0;
  for (int h = 0; h < H; ++h) {
    int64_t t_max = 0;
    for (int n = 0; n < num_nodes; ++n) {
      const Iterations& tau = d.tau(h, n);
      m.tau[static_cast<size_t>(h)].push_back(tau);
      if (tau) t_max = std::max(t_max, *tau);
    }
    m.max_iterations.push_back(t_max);
    total_max += t_max;
  }
  auto T = [&](int h) { return m.max_iterations[static_cast<size_t>(h)]; };
  auto tau = [&](int h, int n) -> const Iterations& {
    return m.tau[static_cast<size_t>(h)][static_cast<size_t>(n)];
  };

  // Variables.
  for (int h = 0; h < H; ++h) {
    for (int p = 0; p <= H; ++p) {
      m.AddVariable({XName(hs[h], p), VarKind::kBinary, 0, 1, "x"});
    }
  }
  for (int h = 0; h < H; ++h) {
    m.AddVariable({Name1("t", hs[h]), VarKind::kInteger, 0, T(h), "t"});
  }
  for (int h = 0; h < H; ++h) {
    m.AddVariable({Name1("p", hs[h]), VarKind::kInteger, 0, H, "p"});
  }
  for (int n = 0; n < num_nodes; ++n) {
    for (int h = 0; h < H; ++h) {
      // A heuristic that never solves N cannot be its solver.
      const int64_t ub = tau(h, n) ? 1 : 0;
      m.AddVariable({Name2("s", ns[n], hs[h]), VarKind::kBinary, 0, ub, "s"});
    }
  }
  for (int n = 0; n < num_nodes; ++n) {
    m.AddVariable({Name1("sN", ns[n]), VarKind::kBinary, 0, 1, "sN"});
  }
  for (int n = 0; n < num_nodes; ++n) {
    m.AddVariable({Name1("pmin", ns[n]), VarKind::kInteger, 1, H, "pmin"});
  }
  for (int n = 0; n < num_nodes; ++n) {
    for (int h = 0; h < H; ++h) {
      m.AddVariable({Name2("z", ns[n], hs[h]), VarKind::kBinary, 0, 1, "z"});
    }
  }
  for (int n = 0; n < num_nodes; ++n) {
    for (int h = 0; h < H; ++h) {
      m.AddVariable({Name2("f", ns[n], hs[h]), VarKind::kBinary, 0, 1, "f"});
    }
  }
  for (int n = 0; n < num_nodes; ++n) {
    m.AddVariable(
        {Name1("tN", ns[n]), VarKind::kInteger, 1, 1 + total_max, "tN"});
  }
  for (int n = 0; n < num_nodes; ++n) {
    for (int h = 0; h < H; ++h) {
      const int64_t ub = tau(h, n) ? 1 : 0;
      m.AddVariable({Name2("y", ns[n], hs[h]), VarKind::kBinary, 0, ub, "y"});
    }
  }
  for (int n = 0; n < num_nodes; ++n) {
    for (int h = 0; h < H; ++h) {
      m.AddVariable({Name2("q", ns[n], hs[h]), VarKind::kInteger, 0, T(h), "q"});
    }
  }

  auto x = [&](int h, int p) { return m.Var(XName(hs[h], p)); };
  auto v1 = [&](std::string_view f, const std::string& a) {
    return m.Var(Name1(f, a));
  };
  auto v2 = [&](std::string_view f, const std::string& a, const std::string& b) {
    return m.Var(Name2(f, a, b));
  };
  const double Hd = static_cast<double>(H);

  for (int n = 0; n < num_nodes; ++n) m.objective.push_back({1.0, v1("tN", ns[n])});

  auto& lin = m.linear_rows;
  for (int p = 1; p <= H; ++p) {
    MiqpRow r = Row("position_capacity[" + std::to_string(p) + "]",
                    RowSense::kLessEqual, 1);
    for (int h = 0; h < H; ++h) r.linear.push_back({1.0, x(h, p)});
    lin.push_back(std::move(r));
  }
  for (int h = 0; h < H; ++h) {
    MiqpRow r = Row(Name1("one_position", hs[h]), RowSense::kEqual, 1);
    for (int p = 0; p <= H; ++p) r.linear.push_back({1.0, x(h, p)});
    lin.push_back(std::move(r));
  }
  for (int h = 0; h < H; ++h) {
    MiqpRow r = Row(Name1("position_value", hs[h]), RowSense::kEqual, 0);
    r.linear.push_back({1.0, v1("p", hs[h])});
    for (int p = 1; p <= H; ++p) r.linear.push_back({-static_cast<double>(p), x(h, p)});
    lin.push_back(std::move(r));
  }
  for (int h = 0; h < H; ++h) {
    MiqpRow r = Row(Name1("budget_link", hs[h]), RowSense::kLessEqual,
                    static_cast<double>(T(h)));
    r.linear.push_back({1.0, v1("t", hs[h])});
    r.linear.push_back({static_cast<double>(T(h)), x(h, 0)});
    lin.push_back(std::move(r));
  }
  for (int n = 0; n < num_nodes; ++n) {
    for (int h = 0; h < H; ++h) {
      const int s = v2("s", ns[n], hs[h]);
      const int t = v1("t", hs[h]);
      if (!tau(h, n)) {
        MiqpRow r = Row(Name2("solves_never", ns[n], hs[h]), RowSense::kEqual, 0);
        r.linear.push_back({1.0, s});
        lin.push_back(std::move(r));
        continue;
      }
      const double tv = static_cast<double>(*tau(h, n));
      // s = 1  =>  t >= tau
      MiqpRow lo = Row(Name2("solves_lb", ns[n], hs[h]), RowSense::kGreaterEqual, 0);
      lo.linear = {{1.0, t}, {-tv, s}};
      lin.push_back(std::move(lo));
      // s = 0  =>  t <= tau - 1, big-M = T_h + 1
      MiqpRow hi = Row(Name2("solves_ub", ns[n], hs[h]), RowSense::kLessEqual, tv - 1);
      hi.linear = {{1.0, t}, {-static_cast<double>(T(h) + 1), s}};
      lin.push_back(std::move(hi));
    }
  }
  for (int n = 0; n < num_nodes; ++n) {
    const int sn = v1("sN", ns[n]);
    for (int h = 0; h < H; ++h) {
      MiqpRow r = Row(Name2("node_solved_lb", ns[n], hs[h]), RowSense::kGreaterEqual, 0);
      r.linear = {{1.0, sn}, {-1.0, v2("s", ns[n], hs[h])}};
      lin.push_back(std::move(r));
    }
    MiqpRow r = Row(Name1("node_solved_ub", ns[n]), RowSense::kLessEqual, 0);
    r.linear.push_back({1.0, sn});
    for (int h = 0; h < H; ++h) r.linear.push_back({-1.0, v2("s", ns[n], hs[h])});
    lin.push_back(std::move(r));
  }
  {
    MiqpRow r = Row("coverage", RowSense::kGreaterEqual,
                    alpha * static_cast<double>(num_nodes));
    for (int n = 0; n < num_nodes; ++n) r.linear.push_back({1.0, v1("sN", ns[n])});
    lin.push_back(std::move(r));
  }
  for (int n = 0; n < num_nodes; ++n) {
    const int pm = v1("pmin", ns[n]);
    const int sn = v1("sN", ns[n]);
    MiqpRow unsolved = Row(Name1("first_position_unsolved", ns[n]),
                           RowSense::kGreaterEqual, Hd);
    unsolved.linear = {{1.0, pm}, {Hd, sn}};
    lin.push_back(std::move(unsolved));
    MiqpRow count = Row(Name1("select_count", ns[n]), RowSense::kEqual, 0);
    for (int h = 0; h < H; ++h) count.linear.push_back({1.0, v2("y", ns[n], hs[h])});
    count.linear.push_back({-1.0, sn});
    lin.push_back(std::move(count));
    for (int h = 0; h < H; ++h) {
      const int ph = v1("p", hs[h]);
      const int s = v2("s", ns[n], hs[h]);
      const int y = v2("y", ns[n], hs[h]);
      // pmin <= p + |H| (1 - s)
      MiqpRow ub = Row(Name2("first_position_ub", ns[n], hs[h]), RowSense::kLessEqual, Hd);
      ub.linear = {{1.0, pm}, {-1.0, ph}, {Hd, s}};
      lin.push_back(std::move(ub));
      MiqpRow sel = Row(Name2("select_solver", ns[n], hs[h]), RowSense::kLessEqual, 0);
      sel.linear = {{1.0, y}, {-1.0, s}};
      lin.push_back(std::move(sel));
      // pmin >= p - |H| (1 - y)
      MiqpRow lb = Row(Name2("first_position_lb", ns[n], hs[h]), RowSense::kGreaterEqual, -Hd);
      lb.linear = {{1.0, pm}, {-1.0, ph}, {-Hd, y}};
      lin.push_back(std::move(lb));
    }
  }
  for (int n = 0; n < num_nodes; ++n) {
    const int pm = v1("pmin", ns[n]);
    for (int h = 0; h < H; ++h) {
      const int ph = v1("p", hs[h]);
      const int z = v2("z", ns[n], hs[h]);
      const int f = v2("f", ns[n], hs[h]);
      // z = 1  =>  p <= pmin - 1
      MiqpRow before = Row(Name2("before_first", ns[n], hs[h]), RowSense::kLessEqual, Hd - 1);
      before.linear = {{1.0, ph}, {-1.0, pm}, {Hd, z}};
      lin.push_back(std::move(before));
      // f = 1  =>  p = pmin
      MiqpRow at_ub = Row(Name2("at_first_ub", ns[n], hs[h]), RowSense::kLessEqual, Hd);
      at_ub.linear = {{1.0, ph}, {-1.0, pm}, {Hd, f}};
      lin.push_back(std::move(at_ub));
      MiqpRow at_lb = Row(Name2("at_first_lb", ns[n], hs[h]), RowSense::kLessEqual, Hd);
      at_lb.linear = {{1.0, pm}, {-1.0, ph}, {Hd, f}};
      lin.push_back(std::move(at_lb));
      // z = f = 0  =>  p >= pmin + 1
      MiqpRow after = Row(Name2("after_first", ns[n], hs[h]), RowSense::kGreaterEqual, 1);
      after.linear = {{1.0, ph}, {-1.0, pm}, {Hd + 1, z}, {Hd + 1, f}};
      lin.push_back(std::move(after));
      MiqpRow part = Row(Name2("order_partition", ns[n], hs[h]), RowSense::kLessEqual, 1);
      part.linear = {{1.0, z}, {1.0, f}};
      lin.push_back(std::move(part));
    }
  }
  for (int n = 0; n < num_nodes; ++n) {
    for (int h = 0; h < H; ++h) {
      const int q = v2("q", ns[n], hs[h]);
      const int z = v2("z", ns[n], hs[h]);
      const int t = v1("t", hs[h]);
      const double th = static_cast<double>(T(h));
      MiqpRow a = Row(Name2("product_z", ns[n], hs[h]), RowSense::kLessEqual, 0);
      a.linear = {{1.0, q}, {-th, z}};
      lin.push_back(std::move(a));
      MiqpRow b = Row(Name2("product_t", ns[n], hs[h]), RowSense::kLessEqual, 0);
      b.linear = {{1.0, q}, {-1.0, t}};
      lin.push_back(std::move(b));
      MiqpRow c = Row(Name2("product_lb", ns[n], hs[h]), RowSense::kGreaterEqual, -th);
      c.linear = {{1.0, q}, {-1.0, t}, {-th, z}};
      lin.push_back(std::move(c));
    }
  }

  // tN = sN (sum_h q + sum_h tau f) + (1 - sN)(1 + sum_h t), expanded.
  for (int n = 0; n < num_nodes; ++n) {
    const int sn = v1("sN", ns[n]);
    MiqpRow r = Row(Name1("node_time", ns[n]), RowSense::kEqual, 1);
    r.linear.push_back({1.0, v1("tN", ns[n])});
    r.linear.push_back({1.0, sn});
    for (int h = 0; h < H; ++h) r.linear.push_back({-1.0, v1("t", hs[h])});
    for (int h = 0; h < H; ++h) {
      r.bilinear.push_back({-1.0, sn, v2("q", ns[n], hs[h])});
      if (tau(h, n)) {
        r.bilinear.push_back(
            {-static_cast<double>(*tau(h, n)), sn, v2("f", ns[n], hs[h])});
      }
      r.bilinear.push_back({1.0, sn, v1("t", hs[h])});
    }
    m.quadratic_rows.push_back(std::move(r));
  }

  m.comments = {
      "Heuristic scheduling model: minimize the total iterations spent over",
      "all nodes subject to solving at least alpha * |N| nodes.",
      "Objective units are raw iterations; it matches the schedule evaluator",
      "only when every heuristic has unit cost per iteration.",
      "Linearizations (all exact for integral points):",
      "  s[N][h] = max(0, min(1, t[h] - tau + 1)): solves_lb (t >= tau s) and",
      "    solves_ub (t - (T_h + 1) s <= tau - 1); fixed to 0 when tau is inf.",
      "  sN[N] = min(1, sum_h s[N][h]): node_solved_lb / node_solved_ub.",
      "  pmin[N] = min_h (p[h] s[N][h] + |H| (1 - s[N][h])): first_position_ub,",
      "    first_position_unsolved, and selector binaries y[N][h]",
      "    (select_solver, select_count, first_position_lb), big-M = |H|.",
      "  z[N][h] = [p[h] < pmin[N]]: before_first, big-M = |H|.",
      "  f[N][h] = [p[h] = pmin[N]]: at_first_ub / at_first_lb with big-M = |H|,",
      "    after_first with big-M = |H| + 1, order_partition z + f <= 1.",
      "  q[N][h] = z[N][h] t[h]: product_z, product_t, product_lb (McCormick).",
      "  node_time keeps explicit bilinear terms; sum_{h,p} x[h][p] t[h] is",
      "    replaced by sum_h t[h], equal under one_position and budget_link.",
      "  f[N][h] tau terms are dropped where tau is inf.",
      "Bounds: t[h] <= T_h (largest finite tau of h), tN[N] <= 1 + sum_h T_h.",
  };
  return m;
}

std::string RenderMiqp(const MiqpModel& m) {
  std::string out;
  auto render_terms = [&](const std::vector<LinearTerm>& lin,
                          const std::vector<BilinearTerm>& bil) {
    std::string s;
    for (const auto& t : lin) {
      s += " " + Coef(t.coef) + " " + m.variables[static_cast<size_t>(t.var)].name;
    }
    for (const auto& t : bil) {
      s += " " + Coef(t.coef) + " " + m.variables[static_cast<size_t>(t.var1)].name +
           "*" + m.variables[static_cast<size_t>(t.var2)].name;
    }
    return s;
  };
  auto render_row = [&](const MiqpRow& r) {
    return r.id + ":" + render_terms(r.linear, r.bilinear) + " " +
           SenseToken(r.sense) + " " + FormatExact(r.rhs) + "\n";
  };
  out += "COMMENTS\n";
  for (const auto& c : m.comments) out += "# " + c + "\n";
  out += "VARIABLES\n";
  for (const auto& v : m.variables) {
    out += v.name + (v.kind == VarKind::kBinary ? " binary " : " integer ") +
           std::to_string(v.lower) + " " + std::to_string(v.upper) + "\n";
  }
  out += "OBJECTIVE\nminimize" + render_terms(m.objective, {}) + "\n";
  out += "LINEAR\n";
  for (const auto& r : m.linear_rows) out += render_row(r);
  out += "QUADRATIC\n";
  for (const auto& r : m.quadratic_rows) out += render_row(r);
  out += "END\n";
  return out;
}

MiqpModel ParseMiqp(std::string_view text) {
  MiqpModel m;
  enum class Section { kNone, kComments, kVariables, kObjective, kLinear, kQuadratic, kEnd };
  Section section = Section::kNone;
  size_t line_no = 0;

  auto fail = [&](const std::string& what) {
    throw InputError("model line " + std::to_string(line_no) + ": " + what);
  };
  auto family_of = [](std::string_view name) {
    return std::string(name.substr(0, name.find('[')));
  };
  auto parse_terms = [&](const std::vector<std::string_view>& tokens, size_t begin,
                         size_t end, MiqpRow& row) {
    if ((end - begin) % 2 != 0) fail("terms must be coefficient/variable pairs");
    for (size_t i = begin; i < end; i += 2) {
      auto coef = ParseDouble(tokens[i]);
      if (!coef) fail("bad coefficient '" + std::string(tokens[i]) + "'");
      const std::string_view var = tokens[i + 1];
      if (auto star = var.find('*'); star != std::string_view::npos) {
        row.bilinear.push_back({*coef, m.Var(var.substr(0, star)),
                                m.Var(var.substr(star + 1))});
      } else {
        row.linear.push_back({*coef, m.Var(var)});
      }
    }
  };

  for (std::string_view raw : SplitLines(text)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (line == "COMMENTS") { section = Section::kComments; continue; }
    if (line == "VARIABLES") { section = Section::kVariables; continue; }
    if (line == "OBJECTIVE") { section = Section::kObjective; continue; }
    if (line == "LINEAR") { section = Section::kLinear; continue; }
    if (line == "QUADRATIC") { section = Section::kQuadratic; continue; }
    if (line == "END") { section = Section::kEnd; continue; }
    if (section == Section::kComments) {
      m.comments.emplace_back(line.substr(line.front() == '#' ? 1 : 0));
      continue;
    }
    std::vector<std::string_view> tokens;
    for (auto tok : SplitFields(line, ' ')) {
      if (!tok.empty()) tokens.push_back(tok);
    }
    switch (section) {
      case Section::kVariables: {
        if (tokens.size() != 4) fail("variable lines need 4 fields");
        MiqpVariable v;
        v.name = std::string(tokens[0]);
        if (tokens[1] == "binary") v.kind = VarKind::kBinary;
        else if (tokens[1] == "integer") v.kind = VarKind::kInteger;
        else fail("unknown variable kind '" + std::string(tokens[1]) + "'");
        auto lo = ParseInt64(tokens[2]);
        auto hi = ParseInt64(tokens[3]);
        if (!lo || !hi) fail("bad variable bounds");
        v.lower = *lo;
        v.upper = *hi;
        v.family = family_of(v.name);
        m.AddVariable(std::move(v));
        break;
      }
      case Section::kObjective: {
        if (tokens.empty() || tokens[0] != "minimize") fail("expected 'minimize'");
        MiqpRow obj;
        parse_terms(tokens, 1, tokens.size(), obj);
        if (!obj.bilinear.empty()) fail("objective must be linear");
        m.objective = std::move(obj.linear);
        break;
      }
      case Section::kLinear:
      case Section::kQuadratic: {
        if (tokens.size() < 3 || tokens[0].back() != ':') fail("malformed row");
        MiqpRow row;
        row.id = std::string(tokens[0].substr(0, tokens[0].size() - 1));
        const std::string_view sense = tokens[tokens.size() - 2];
        if (sense == "<=") row.sense = RowSense::kLessEqual;
        else if (sense == ">=") row.sense = RowSense::kGreaterEqual;
        else if (sense == "=") row.sense = RowSense::kEqual;
        else fail("unknown sense '" + std::string(sense) + "'");
        auto rhs = ParseDouble(tokens.back());
        if (!rhs) fail("bad right-hand side");
        row.rhs = *rhs;
        parse_terms(tokens, 1, tokens.size() - 2, row);
        if (section == Section::kLinear && !row.bilinear.empty()) {
          fail("bilinear term in LINEAR section");
        }
        (section == Section::kLinear ? m.linear_rows : m.quadratic_rows)
            .push_back(std::move(row));
        break;
      }
      default:
        fail("content outside of a section");
    }
  }
  if (section != Section::kEnd) throw InputError("model text is missing END");
  return m;
}

int64_t Assignment::at(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) {
    throw InputError("assignment is missing variable '" + name + "'");
  }
  return it->second;
}

Assignment EncodeSchedule(const MiqpModel& m, const Schedule& s) {
  const int H = static_cast<int>(m.heuristics.size());
  const int num_nodes = static_cast<int>(m.nodes.size());
  std::vector<int64_t> position(static_cast<size_t>(H), 0);
  std::vector<int64_t> budget(static_cast<size_t>(H), 0);
  for (size_t i = 0; i < s.size(); ++i) {
    const auto& e = s.entries()[i];
    auto it = std::find(m.heuristics.begin(), m.heuristics.end(), e.heuristic);
    if (it == m.heuristics.end()) {
      throw InputError("schedule heuristic '" + e.heuristic +
                       "' is not part of the model");
    }
    const auto h = static_cast<size_t>(it - m.heuristics.begin());
    position[h] = static_cast<int64_t>(i) + 1;
    budget[h] = e.budget;
  }
  Assignment a;
  auto& v = a.values;
  const auto& hs = m.heuristics;
  const auto& ns = m.nodes;
  int64_t total_budget = 0;
  for (int h = 0; h < H; ++h) {
    const auto uh = static_cast<size_t>(h);
    for (int p = 0; p <= H; ++p) v[XName(hs[uh], p)] = position[uh] == p ? 1 : 0;
    v[Name1("t", hs[uh])] = budget[uh];
    v[Name1("p", hs[uh])] = position[uh];
    total_budget += budget[uh];
  }
  for (int n = 0; n < num_nodes; ++n) {
    const auto un = static_cast<size_t>(n);
    int64_t sn = 0;
    int64_t pmin = H;
    for (int h = 0; h < H; ++h) {
      const auto uh = static_cast<size_t>(h);
      const Iterations& tau = m.tau[uh][un];
      const int64_t s_nh = (tau && budget[uh] >= *tau) ? 1 : 0;
      v[Name2("s", ns[un], hs[uh])] = s_nh;
      if (s_nh) {
        sn = 1;
        pmin = std::min(pmin, position[uh]);
      }
    }
    v[Name1("sN", ns[un])] = sn;
    v[Name1("pmin", ns[un])] = pmin;
    int64_t node_time = 0;
    for (int h = 0; h < H; ++h) {
      const auto uh = static_cast<size_t>(h);
      const int64_t z = position[uh] < pmin ? 1 : 0;
      const int64_t f = position[uh] == pmin ? 1 : 0;
      v[Name2("z", ns[un], hs[uh])] = z;
      v[Name2("f", ns[un], hs[uh])] = f;
      v[Name2("q", ns[un], hs[uh])] = z * budget[uh];
      v[Name2("y", ns[un], hs[uh])] =
          (sn && f && v[Name2("s", ns[un], hs[uh])]) ? 1 : 0;
      if (sn) {
        node_time += z * budget[uh];
        if (f) node_time += *m.tau[uh][un];
      }
    }
    v[Name1("tN", ns[un])] = sn ? node_time : 1 + total_budget;
  }
  return a;
}

CheckResult CheckAssignment(const MiqpModel& m, const Assignment& a) {
  if (m.tau.size() != m.heuristics.size()) {
    throw InputError("model carries no instance data to check against");
  }
  const int H = static_cast<int>(m.heuristics.size());
  const int num_nodes = static_cast<int>(m.nodes.size());
  const auto& hs = m.heuristics;
  const auto& ns = m.nodes;
  CheckResult r;

  // Bounds and presence of the original families.
  for (const auto& var : m.variables) {
    if (var.family == "y" || var.family == "q") continue;
    const int64_t value = a.at(var.name);
    if (value < var.lower || value > var.upper) {
      r.violated.push_back("bounds:" + var.name);
    }
  }

  auto x = [&](int h, int p) { return a.at(XName(hs[static_cast<size_t>(h)], p)); };
  auto g1 = [&](std::string_view f, int i, const std::vector<std::string>& names) {
    return a.at(Name1(f, names[static_cast<size_t>(i)]));
  };
  auto g2 = [&](std::string_view f, int n, int h) {
    return a.at(Name2(f, ns[static_cast<size_t>(n)], hs[static_cast<size_t>(h)]));
  };

  for (int p = 1; p <= H; ++p) {
    int64_t sum = 0;
    for (int h = 0; h < H; ++h) sum += x(h, p);
    if (sum > 1) r.violated.push_back("position_capacity[" + std::to_string(p) + "]");
  }
  for (int h = 0; h < H; ++h) {
    int64_t sum = 0;
    int64_t weighted = 0;
    for (int p = 0; p <= H; ++p) {
      sum += x(h, p);
      weighted += p * x(h, p);
    }
    const std::string& name = hs[static_cast<size_t>(h)];
    if (sum != 1) r.violated.push_back(Name1("one_position", name));
    if (g1("p", h, hs) != weighted) r.violated.push_back(Name1("position_value", name));
    if (m.max_iterations[static_cast<size_t>(h)] * (1 - x(h, 0)) < g1("t", h, hs)) {
      r.violated.push_back(Name1("budget_link", name));
    }
  }

  int64_t solved_total = 0;
  for (int n = 0; n < num_nodes; ++n) {
    const auto un = static_cast<size_t>(n);
    const std::string& node = ns[un];
    int64_t s_sum = 0;
    int64_t pmin_expected = std::numeric_limits<int64_t>::max();
    for (int h = 0; h < H; ++h) {
      const auto uh = static_cast<size_t>(h);
      const Iterations& tau = m.tau[uh][un];
      const int64_t s = g2("s", n, h);
      const int64_t expected =
          tau ? std::max<int64_t>(0, std::min<int64_t>(1, g1("t", h, hs) - *tau + 1))
              : 0;
      if (s != expected) r.violated.push_back(Name2("solves", node, hs[uh]));
      s_sum += s;
      pmin_expected = std::min(pmin_expected, g1("p", h, hs) * s + (1 - s) * H);
    }
    const int64_t sn = g1("sN", n, ns);
    if (sn != std::min<int64_t>(1, s_sum)) r.violated.push_back(Name1("node_solved", node));
    solved_total += sn;

    const int64_t pmin = g1("pmin", n, ns);
    if (H > 0 && pmin != pmin_expected) r.violated.push_back(Name1("first_position", node));

    int64_t solved_branch = 0;
    bool infinite = false;
    int64_t schedule_length = 0;
    for (int h = 0; h < H; ++h) {
      const auto uh = static_cast<size_t>(h);
      const int64_t ph = g1("p", h, hs);
      const int64_t z = g2("z", n, h);
      const int64_t f = g2("f", n, h);
      if (z != (ph < pmin ? 1 : 0)) r.violated.push_back(Name2("before_first", node, hs[uh]));
      if (f != (ph == pmin ? 1 : 0)) r.violated.push_back(Name2("at_first", node, hs[uh]));
      const int64_t t = g1("t", h, hs);
      solved_branch += z * t;
      if (f) {
        if (m.tau[uh][un]) solved_branch += *m.tau[uh][un];
        else infinite = true;
      }
      for (int p = 0; p <= H; ++p) schedule_length += x(h, p) * t;
    }
    const int64_t tn = g1("tN", n, ns);
    if (sn == 1) {
      if (infinite || tn != solved_branch) r.violated.push_back(Name1("node_time", node));
    } else if (sn == 0) {
      if (tn != 1 + schedule_length) r.violated.push_back(Name1("node_time", node));
    } else {
      r.violated.push_back(Name1("node_time", node));
    }
    r.objective += tn;
  }
  if (static_cast<double>(solved_total) <
      m.alpha * static_cast<double>(num_nodes) - 1e-9) {
    r.violated.push_back("coverage");
  }
  r.feasible = r.violated.empty();
  return r;
}

CheckResult CheckRows(const MiqpModel& m, const Assignment& a) {
  CheckResult r;
  std::vector<int64_t> value(m.variables.size());
  for (size_t i = 0; i < m.variables.size(); ++i) {
    const auto& var = m.variables[i];
    value[i] = a.at(var.name);
    if (value[i] < var.lower || value[i] > var.upper) {
      r.violated.push_back("bounds:" + var.name);
    }
  }
  auto eval = [&](const MiqpRow& row) {
    double lhs = 0.0;
    for (const auto& t : row.linear) {
      lhs += t.coef * static_cast<double>(value[static_cast<size_t>(t.var)]);
    }
    for (const auto& t : row.bilinear) {
      lhs += t.coef * static_cast<double>(value[static_cast<size_t>(t.var1)]) *
             static_cast<double>(value[static_cast<size_t>(t.var2)]);
    }
    bool ok = true;
    switch (row.sense) {
      case RowSense::kLessEqual: ok = lhs <= row.rhs + kRowTolerance; break;
      case RowSense::kGreaterEqual: ok = lhs >= row.rhs - kRowTolerance; break;
      case RowSense::kEqual: ok = std::abs(lhs - row.rhs) <= kRowTolerance; break;
    }
    if (!ok) r.violated.push_back(row.id);
  };
  for (const auto& row : m.linear_rows) eval(row);
  for (const auto& row : m.quadratic_rows) eval(row);
  double objective = 0.0;
  for (const auto& t : m.objective) {
    objective += t.coef * static_cast<double>(value[static_cast<size_t>(t.var)]);
  }
  r.objective = static_cast<int64_t>(std::llround(objective));
  r.feasible = r.violated.empty();
  return r;
}

}  // namespace hsched
