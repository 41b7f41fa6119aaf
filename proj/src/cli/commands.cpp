// Copyright 2026 The gridcube Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gridcube/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gridcube/distributed.hpp"
#include "gridcube/prefix_sum.hpp"
#include "gridcube/recovery.hpp"
#include "gridcube/region_division.hpp"
#include "gridcube/render.hpp"
#include "gridcube/scenario.hpp"

namespace gridcube {
namespace {

using nlohmann::json;

struct Options {
  std::string scenario;
  std::vector<std::string> regions;
  std::vector<std::string> fails;
  std::string mode;
  bool redundant = false;
  bool dump = false;
  std::string json_path;
  std::string svg_path;
  std::optional<std::uint64_t> seed;
};

// Everything a subcommand needs, loaded once.
struct Session {
  Scenario sc;
  CubeHierarchy h;
  std::vector<std::string> regions;  // queries expanded

  Session(const Options& o)
      : sc(load_scenario(o.scenario, o.seed)), h(CubeHierarchy::build(sc.values, sc.config)) {
    for (const std::string& name : o.regions) {
      for (std::string& r : sc.expand(name)) regions.push_back(std::move(r));
    }
  }

  std::string label(CellId id) const { return cell_label(h, id); }
  std::string alias(CellId id) const {
    auto a = sc.label(id);
    return a ? *a : label(id);
  }
};

std::string format_value(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json cell_json(const CubeHierarchy& h, CellId id) {
  const Rect b = h.cell(id).bounds;
  return {{"label", cell_label(h, id)}, {"level", id.level}, {"x0", b.lo.x}, {"y0", b.lo.y},
          {"x1", b.hi.x}, {"y1", b.hi.y}, {"value", h.value(id)}};
}

json plan_json(const Session& s, const QueryPlan& p) {
  json terms = json::array();
  for (const PlanTerm& t : p.terms) {
    json c = cell_json(s.h, t.cell);
    c["sign"] = t.sign;
    if (auto a = s.sc.label(t.cell)) c["alias"] = *a;
    terms.push_back(std::move(c));
  }
  return {{"terms", terms}, {"size", p.size()}, {"value", p.value}};
}

json labels_json(const CubeHierarchy& h, const std::vector<CellId>& cells) {
  json out = json::array();
  for (CellId c : cells) out.push_back(cell_label(h, c));
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw std::ios_base::failure("cannot write '" + path + "'");
}

void need_regions(const Session& s, const char* cmd) {
  if (s.regions.empty()) {
    throw CLI::ValidationError(std::string(cmd) + ": at least one --region is required");
  }
}

void print_aliases(const Session& s, const QueryPlan& p, std::ostream& out) {
  if (s.sc.labels.empty()) return;
  out << "aliases";
  for (const PlanTerm& t : p.terms) out << ' ' << (t.sign > 0 ? '+' : '-') << s.alias(t.cell);
  out << '\n';
}

json cmd_divide(const Session& s, std::ostream& out) {
  need_regions(s, "divide");
  json rep = json::array();
  for (const std::string& name : s.regions) {
    const CellCover cover = greedy_divide(s.h, s.sc.region(name));
    out << "region " << name << '\n';
    std::map<int, int> per_level;
    json cells = json::array();
    for (CellId id : cover.cells) {
      const Rect b = s.h.cell(id).bounds;
      out << id.level << ":(" << b.lo.x << ',' << b.lo.y << ")-(" << b.hi.x << ',' << b.hi.y << ")\n";
      ++per_level[id.level];
      cells.push_back(cell_json(s.h, id));
    }
    out << "size " << cover.size();
    for (auto it = per_level.rbegin(); it != per_level.rend(); ++it) {
      out << " L" << it->first << '=' << it->second;
    }
    out << '\n';
    rep.push_back({{"name", name}, {"cells", cells}, {"size", cover.size()}});
  }
  return {{"regions", rep}};
}

json recovery_json(const RecoveryResult& r) {
  static const char* kinds[] = {"exact", "estimate", "unrecoverable"};
  json comps = json::array();
  for (const ComponentRecovery& c : r.components) {
    comps.push_back({{"kind", kinds[static_cast<int>(c.kind)]},
                     {"requested_area", c.requested.size()},
                     {"recovered_area", c.recovered.size()},
                     {"level", c.level},
                     {"points_read", c.points_read}});
  }
  json j = {{"kind", kinds[static_cast<int>(r.kind)]},
            {"requested_area", r.requested_area},
            {"recovered_area", r.recovered_area},
            {"points_read", r.points_read},
            {"components", comps}};
  if (r.kind == RecoveryKind::kUnrecoverable) {
    j["value"] = nullptr;
  } else {
    j["value"] = r.value;
  }
  return j;
}

const char* kind_name(RecoveryKind k) {
  switch (k) {
    case RecoveryKind::kExact: return "exact";
    case RecoveryKind::kEstimate: return "estimate";
    case RecoveryKind::kUnrecoverable: return "unrecoverable";
  }
  return "?";
}

void print_recovery(const RecoveryResult& r, std::ostream& out) {
  out << "kind " << kind_name(r.kind) << '\n';
  out << "value " << (r.kind == RecoveryKind::kUnrecoverable ? "none" : format_value(r.value)) << '\n';
  out << "requested_area " << r.requested_area << '\n';
  out << "recovered_area " << r.recovered_area << '\n';
  out << "points_read " << r.points_read << '\n';
}

json cmd_plan(const Session& s, const Options& o, std::ostream& out) {
  need_regions(s, "plan");
  const FailureSet fs = s.sc.failure_set(s.h, o.fails);
  const CellSet lost = failed_datapoints(s.h, fs);
  json queries = json::array();
  CellSet individual;
  bool all_feasible = true;
  for (const std::string& name : s.regions) {
    const RectilinearRegion region = s.sc.region(name);
    json q = {{"name", name}, {"area", region.size()}};
    out << "query " << name << '\n';
    const FailurePlan fp = plan_with_failures(s.h, fs, region);
    if (fp.plan) {
      out << format_plan(*fp.plan, s.h) << '\n';
      print_aliases(s, *fp.plan, out);
      out << "size " << fp.plan->size() << '\n';
      for (const PlanTerm& t : fp.plan->terms) individual.insert(t.cell);
      q["feasible"] = true;
      q["plan"] = plan_json(s, *fp.plan);
    } else {
      all_feasible = false;
      out << "INFEASIBLE";
      for (CellId b : fp.blocking) out << ' ' << s.label(b);
      out << '\n';
      print_recovery(*fp.recovery, out);
      q["feasible"] = false;
      q["blocking"] = labels_json(s.h, fp.blocking);
      q["recovery"] = recovery_json(*fp.recovery);
    }
    queries.push_back(std::move(q));
  }
  json rep = {{"queries", queries}};
  if (all_feasible) {
    out << "retrieval individual " << individual.size() << '\n';
    rep["retrieval_individual"] = individual.size();
  }
  if (s.regions.size() > 1) {
    std::vector<HierarchyTree> trees;
    for (const std::string& name : s.regions) trees.push_back(color_tree(s.h, s.sc.region(name), lost));
    const CombinedPlan cp = combined_plan(trees, s.h);
    json comb = {{"feasible", cp.feasible}};
    if (cp.feasible) {
      out << "retrieval combined " << cp.retrieval.size() << ':';
      for (CellId c : cp.retrieval) out << ' ' << s.alias(c);
      out << '\n';
      json plans = json::array();
      for (std::size_t i = 0; i < cp.plans.size(); ++i) {
        out << "combined " << s.regions[i] << ' ' << format_plan(cp.plans[i], s.h) << '\n';
        plans.push_back(plan_json(s, cp.plans[i]));
      }
      comb["retrieval"] = labels_json(s.h, cp.retrieval);
      comb["plans"] = plans;
    } else {
      out << "combined INFEASIBLE";
      for (CellId b : cp.blocking) out << ' ' << s.label(b);
      out << '\n';
      comb["blocking"] = labels_json(s.h, cp.blocking);
    }
    rep["combined"] = comb;
  }
  return rep;
}

std::string point_label(PsPoint p) {
  return "PS" + std::to_string(p.level) + "(" + std::to_string(p.bx) + "," + std::to_string(p.by) + ")";
}

json cmd_ps_plan(const Session& s, std::ostream& out) {
  need_regions(s, "ps-plan");
  const PrefixSumCube ps = PrefixSumCube::build(s.sc.values, s.sc.config);
  json rep = json::array();
  for (const std::string& name : s.regions) {
    const RectilinearRegion region = s.sc.region(name);
    const PsQueryPlan q = ps_query_plan(ps, region);
    const RectilinearSum direct = rectilinear_sum(ps, region);
    out << "query " << name << '\n';
    json terms = json::array();
    for (const PsTerm& t : q.terms) {
      const Rect c = ps.covered(t.point);
      out << (t.sign > 0 ? '+' : '-') << ' ' << point_label(t.point) << " covers (" << c.lo.x << ','
          << c.lo.y << ")-(" << c.hi.x << ',' << c.hi.y << ") = " << ps.entry(t.point) << '\n';
      terms.push_back({{"level", t.point.level}, {"bx", t.point.bx}, {"by", t.point.by},
                       {"sign", t.sign}, {"entry", ps.entry(t.point)},
                       {"covered", {c.lo.x, c.lo.y, c.hi.x, c.hi.y}}});
    }
    out << "cost " << q.cost << " value " << q.value << '\n';
    out << "corners " << direct.corner_terms << " points_read " << direct.points_read << '\n';
    rep.push_back({{"name", name}, {"terms", terms}, {"cost", q.cost}, {"value", q.value},
                   {"corner_terms", direct.corner_terms}, {"points_read", direct.points_read}});
  }
  return {{"queries", rep}};
}

// Stored values checked against the centralized cube: in simple mode the
// summaries of the cells a node is junction of, in PS mode every value that
// names a table entry.
std::size_t construction_mismatches(const Session& s, const Construction& c, CubeMode mode) {
  std::size_t bad = 0;
  const ConstructionContext ctx(s.sc.config, false);
  if (mode == CubeMode::kSimple) {
    for (const NodeState& st : c.states) {
      const std::vector<Value> sums = simple_summaries(st);
      const std::vector<Cell> cells = s.h.cells_at(st.coord);
      if (sums.size() != cells.size()) ++bad;
      for (std::size_t i = 0; i < std::min(sums.size(), cells.size()); ++i) {
        if (sums[i] != s.h.value(s.h.cell_containing(st.coord, cells[i].level))) ++bad;
      }
    }
    return bad;
  }
  const PrefixSumCube ps = PrefixSumCube::build(s.sc.values, s.sc.config);
  for (const NodeState& st : c.states) {
    for (int level = 1; level <= static_cast<int>(st.stored.size()); ++level) {
      if (level > 1 && st.junction_level < level - 1) continue;  // partial (redundant) slot
      const CellId base = s.h.cell_containing(st.coord, level - 1);
      if (st.stored[level - 1] != ps.entry({level, base.cx, base.cy})) ++bad;
    }
  }
  return bad;
}

json cmd_construct(const Session& s, const Options& o, std::ostream& out) {
  CubeMode mode = s.sc.mode;
  if (o.mode == "simple") mode = CubeMode::kSimple;
  if (o.mode == "ps") mode = CubeMode::kPrefixSum;
  const bool redundant = o.redundant || s.sc.redundant;
  const Construction c = run_construction(s.sc.values, s.sc.config, redundant);
  long long received = 0, sent = 0;
  for (int r : c.stats.received) received += r;
  for (int v : c.stats.sent) sent += v;
  const std::size_t bad = construction_mismatches(s, c, mode);
  out << "nodes " << c.states.size() << " sent " << sent << " received " << received
      << " max_received " << c.stats.max_received << " messages " << c.stats.total_messages << '\n';
  out << "mode " << (mode == CubeMode::kSimple ? "simple" : "ps") << (redundant ? " redundant" : "")
      << " oracle " << (bad == 0 ? "match" : "MISMATCH " + std::to_string(bad)) << '\n';
  if (o.dump) out << dump_states(c);
  json nodes = json::array();
  for (const NodeState& st : c.states) {
    nodes.push_back({{"x", st.coord.x}, {"y", st.coord.y}, {"k", st.junction_level}, {"stored", st.stored}});
  }
  return {{"mode", mode == CubeMode::kSimple ? "simple" : "ps"},
          {"redundant", redundant},
          {"stats", {{"nodes", c.states.size()}, {"sent", sent}, {"received", received},
                     {"max_received", c.stats.max_received}, {"messages", c.stats.total_messages}}},
          {"oracle_mismatches", bad},
          {"nodes", nodes}};
}

json cmd_recover(const Session& s, const Options& o, std::ostream& out) {
  if (o.fails.empty()) throw CLI::ValidationError("recover: at least one --fail is required");
  const FailureSet fs = s.sc.failure_set(s.h, o.fails);
  json rep = {{"queries", json::array()}, {"nodes", json::array()}};
  for (const std::string& name : s.regions) {
    const RectilinearRegion region = s.sc.region(name);
    out << "query " << name << '\n';
    const FailurePlan fp = plan_with_failures(s.h, fs, region);
    RecoveryResult r;
    if (fp.plan) {
      const std::size_t lost = (region & failed_locations(s.h, fs)).size();
      r.value = static_cast<double>(fp.plan->value);
      r.requested_area = r.recovered_area = lost;
      r.points_read = fp.plan->size();
      out << format_plan(*fp.plan, s.h) << '\n';
    } else {
      r = *fp.recovery;
      out << "INFEASIBLE";
      for (CellId b : fp.blocking) out << ' ' << s.label(b);
      out << '\n';
    }
    print_recovery(r, out);
    json q = recovery_json(r);
    q["name"] = name;
    q["naive"] = region_sum(s.sc.values, region);
    rep["queries"].push_back(std::move(q));
  }

  // Node failures also exercise the in-network reconstruction.
  if (!fs.nodes.empty()) {
    const bool redundant = o.redundant || s.sc.redundant;
    const Construction c = run_construction(s.sc.values, s.sc.config, redundant);
    const ConstructionContext ctx(s.sc.config, redundant);
    for (GridCoord f : fs.nodes) {
      const NodeState& st = c.at(s.sc.dims(), f);
      for (int level = 1; level <= static_cast<int>(st.stored.size()); ++level) {
        std::set<GridCoord> others = fs.nodes;
        others.erase(f);
        auto r = recover_junction(ctx, c, others, f, level);
        out << "node (" << f.x << ',' << f.y << ") level " << level;
        json j = {{"x", f.x}, {"y", f.y}, {"level", level}, {"recovered", r.has_value()}};
        if (r) {
          out << " value " << r->value << " donors " << r->donors.size() << " distance " << r->distance
              << (r->value == st.stored[level - 1] ? "" : " MISMATCH") << '\n';
          j["value"] = r->value;
          j["donors"] = r->donors.size();
          j["distance"] = r->distance;
        } else {
          out << " unrecoverable\n";
        }
        rep["nodes"].push_back(std::move(j));
      }
    }
  }
  return rep;
}

json cmd_render(const Session& s, const Options& o, std::ostream& out) {
  RectilinearRegion region(s.sc.dims());
  for (const std::string& name : s.regions) region = region | s.sc.region(name);
  std::optional<QueryPlan> plan;
  if (!region.empty()) plan = plan_region(s.h, region).plan;
  RenderOptions ro;
  ro.alias = [&](CellId id) { return s.sc.label(id); };
  const std::string svg = render_svg(s.h, region, plan ? &*plan : nullptr, ro);
  if (o.svg_path.empty()) {
    out << svg;
  } else {
    write_file(o.svg_path, svg);
    out << "wrote " << o.svg_path << '\n';
  }
  return {{"svg", o.svg_path}, {"area", region.size()}, {"plan_size", plan ? plan->size() : 0}};
}

}  // namespace

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kParse: return kExitParse;
    case ErrorKind::kResolution: return kExitResolution;
    case ErrorKind::kBounds: return kExitBounds;
    case ErrorKind::kValidation: return kExitValidation;
    case ErrorKind::kConfig: return kExitConfig;
    case ErrorKind::kIntegrity: return kExitIntegrity;
  }
  return kExitIntegrity;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiresolution cube summaries over a sensor grid", "gridcube"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool regions, bool fails) {
    sub->add_option("--scenario", o.scenario, "scenario JSON file")->required();
    sub->add_option("--json", o.json_path, "write a machine-readable report");
    sub->add_option("--seed", o.seed, "override the random grid seed");
    if (regions) sub->add_option("--region", o.regions, "region or query name (repeatable)");
    if (fails) sub->add_option("--fail", o.fails, "failure set name or node:x,y / cell:L:x,y (repeatable)");
  };
  CLI::App* divide = app.add_subcommand("divide", "greedy cube-cell cover of a region");
  common(divide, true, false);
  CLI::App* plan = app.add_subcommand("plan", "minimum retrieval plans, single or combined");
  common(plan, true, true);
  CLI::App* ps_plan = app.add_subcommand("ps-plan", "prefix-sum cube retrieval plan");
  common(ps_plan, true, false);
  CLI::App* construct = app.add_subcommand("construct", "simulate distributed construction");
  common(construct, false, false);
  construct->add_option("--mode", o.mode, "cube variant checked against")
      ->check(CLI::IsMember({"simple", "ps"}));
  construct->add_flag("--redundant", o.redundant, "keep one extra level per node");
  construct->add_flag("--dump", o.dump, "print every node's state");
  CLI::App* recover = app.add_subcommand("recover", "answer a query despite failures");
  common(recover, true, true);
  recover->add_flag("--redundant", o.redundant, "node recovery over redundant storage");
  CLI::App* render = app.add_subcommand("render", "SVG of the hierarchy, region and plan");
  common(render, true, false);
  render->add_option("--svg", o.svg_path, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Session s(o);
    json report;
    if (*divide) report = cmd_divide(s, out);
    if (*plan) report = cmd_plan(s, o, out);
    if (*ps_plan) report = cmd_ps_plan(s, out);
    if (*construct) report = cmd_construct(s, o, out);
    if (*recover) report = cmd_recover(s, o, out);
    if (*render) report = cmd_render(s, o, out);
    if (!o.json_path.empty()) {
      report["command"] = app.get_subcommands().front()->get_name();
      report["scenario"] = o.scenario;
      write_file(o.json_path, report.dump(2) + "\n");
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace gridcube
