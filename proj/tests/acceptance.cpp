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

// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "cut_oracle.hpp"
#include "gridcube/distributed.hpp"
#include "gridcube/planner.hpp"
#include "gridcube/prefix_sum.hpp"
#include "gridcube/recovery.hpp"
#include "gridcube/region_division.hpp"
#include "gridcube/scenario.hpp"
#include "oracles.hpp"

using namespace gridcube;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && s > budget_s) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(budget_s) + " s budget)";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %-34s %8.3fs  %s\n", o.pass ? "PASS" : "FAIL", id, title, s, o.detail.c_str());
  std::fflush(stdout);
}

CellId labelled(const Scenario& sc, const std::string& name) {
  for (const CellLabel& l : sc.labels)
    if (l.label == name) return l.cell;
  throw std::runtime_error("fixture lacks label " + name);
}

std::string show(const Scenario& sc, const CubeHierarchy& h, const std::vector<PlanTerm>& terms) {
  std::string s;
  for (const PlanTerm& t : terms) {
    const auto a = sc.label(t.cell);
    s += (t.sign > 0 ? " +" : " -") + (a ? *a : cell_label(h, t.cell));
  }
  return s;
}

Outcome worked_example() {
  const Scenario sc = load_scenario(oracle::fixture("three_level.json"));
  const auto h = CubeHierarchy::build(sc.values, sc.config);
  const auto p = plan_region(h, sc.region("G"));
  if (!p.feasible()) return {false, "no finite cut"};
  const std::vector<PlanTerm> want{{labelled(sc, "1"), +1}, {labelled(sc, "4"), +1},
                                   {labelled(sc, "b"), +1}, {labelled(sc, "iv"), -1}};
  const std::vector<PlanTerm>& got = p.plan->terms;
  auto as_set = [](const std::vector<PlanTerm>& terms) {
    std::set<std::pair<CellId, int>> s;
    for (const PlanTerm& t : terms) s.insert({t.cell, t.sign});
    return s;
  };
  const bool same = as_set(got) == as_set(want);
  const bool exact = p.plan->value == oracle::naive_sum(sc.values, sc.region("G"));
  return {same && exact && p.plan->size() == 4, "plan" + show(sc, h, got)};
}

Outcome multi_query() {
  const Scenario sc = load_scenario(oracle::fixture("three_level.json"));
  const auto h = CubeHierarchy::build(sc.values, sc.config);
  std::set<CellId> individual;
  std::vector<HierarchyTree> trees;
  for (const char* q : {"G", "Q2"}) {
    const auto p = plan_region(h, sc.region(q));
    if (!p.feasible()) return {false, "infeasible"};
    for (const PlanTerm& t : p.plan->terms) individual.insert(t.cell);
    trees.push_back(color_tree(h, sc.region(q)));
  }
  const CombinedPlan c = combined_plan(trees, h);
  std::set<CellId> joint(c.retrieval.begin(), c.retrieval.end());
  const std::set<CellId> want{labelled(sc, "1"), labelled(sc, "4"), labelled(sc, "i"),
                              labelled(sc, "ii"), labelled(sc, "iii")};
  bool values = c.feasible && c.plans.size() == 2 &&
                c.plans[0].value == oracle::naive_sum(sc.values, sc.region("G")) &&
                c.plans[1].value == oracle::naive_sum(sc.values, sc.region("Q2"));
  std::string names;
  for (CellId id : joint) names += " " + sc.label(id).value_or(cell_label(h, id));
  return {individual.size() == 6 && joint == want && values,
          "individual " + std::to_string(individual.size()) + ", combined " +
              std::to_string(joint.size()) + ":" + names};
}

Outcome prefix_example() {
  const Scenario sc = load_scenario(oracle::fixture("prefix_4x4.json"));
  const auto ps = PrefixSumCube::build(sc.values, sc.config);
  const RectangleSum r = rectangle_sum(ps, {1, 0, 0}, {1, 1, 3, 3});
  std::string detail = std::to_string(r.value) + " =";
  std::vector<std::pair<Value, int>> got;
  for (const PsTerm& t : r.points) {
    got.emplace_back(ps.entry(t.point), t.sign);
    detail += (t.sign > 0 ? " +" : " -") + std::to_string(ps.entry(t.point));
  }
  const std::vector<std::pair<Value, int>> want{{170, +1}, {12, +1}, {36, -1}, {65, -1}};
  return {r.value == 81 && got == want, detail};
}

Outcome greedy_is_minimal() {
  std::mt19937_64 rng(1001);
  int n = 0, bad = 0;
  for (const std::vector<int> f : {std::vector<int>{2, 2}, std::vector<int>{3, 2}}) {
    for (int t = 0; t < 300; ++t, ++n) {
      const GridDims d(1 + static_cast<int>(rng() % 12), 1 + static_cast<int>(rng() % 12));
      const auto h = CubeHierarchy::build(GridValues::filled(d, 0), {d, f});
      const auto r = oracle::random_region(rng, d, 1 + static_cast<int>(rng() % 5));
      if (greedy_divide(h, r).size() != oracle::min_exact_cover(r, f)) ++bad;
    }
  }
  return {bad == 0, std::to_string(n) + " regions, " + std::to_string(bad) + " mismatches"};
}

Outcome cut_invariance() {
  std::mt19937_64 rng(1002);
  int instances = 0, bad_sum = 0, bad_min = 0;
  std::size_t cuts = 0;
  while (instances < 200) {
    const GridDims d(2 + static_cast<int>(rng() % 7), 2 + static_cast<int>(rng() % 7));
    const std::vector<int> f = rng() % 2 ? std::vector<int>{2, 2} : std::vector<int>{1, 2, 2};
    const GridValues v = oracle::random_values(rng, d);
    const auto h = CubeHierarchy::build(v, {d, f});
    const auto r = oracle::random_region(rng, d, 1 + static_cast<int>(rng() % 3));
    const Value truth = oracle::naive_sum(v, r);
    const auto e = oracle::enumerate_cuts(h, color_tree(h, r), truth, 14);
    if (!e) continue;
    ++instances;
    cuts += e->finite_cuts;
    bad_sum += e->bad_sums != 0;
    const auto p = plan_region(h, r);
    if (!p.feasible() || p.plan->size() != e->min_size || p.plan->value != truth) ++bad_min;
  }
  return {bad_sum == 0 && bad_min == 0,
          std::to_string(instances) + " instances, " + std::to_string(cuts) + " cuts; sum mismatches " +
              std::to_string(bad_sum) + ", size mismatches " + std::to_string(bad_min)};
}

Outcome no_double_payment() {
  std::mt19937_64 rng(1003);
  int instances = 0, violations = 0, compared = 0, optimal = 0, fallbacks = 0;
  auto check = [&](const CubeHierarchy& h, const std::vector<HierarchyTree>& trees) {
    const FlowGraph g = build_combined_graph(trees);
    const CutSolution s = solve_min_cut(g, h);
    if (!s.feasible) return;
    ++instances;
    // The union-graph cut pays once per datapoint.
    for (const auto& [cell, count] : oracle::paid_arcs(g, s)) violations += count > 1;
    if (static_cast<std::size_t>(s.cut_value) != s.retrieval.size()) ++violations;

    // The returned plan reads no more than separate plans would, and every
    // per-query plan is still exact.
    const CombinedPlan c = combined_plan(trees, h);
    fallbacks += !c.from_union_graph;
    CellSet alone;
    for (const HierarchyTree& t : trees) {
      const PlanResult p = min_cut_plan(build_flow_graph(t), h);
      for (const PlanTerm& term : p.plan->terms) alone.insert(term.cell);
    }
    if (!c.feasible || c.retrieval.size() > alone.size()) ++violations;
    for (std::size_t q = 0; q < trees.size(); ++q) {
      if (c.plans[q].value != oracle::naive_sum(h.values(), trees[q].region)) ++violations;
      const CellSet read(c.retrieval.begin(), c.retrieval.end());
      for (const PlanTerm& term : c.plans[q].terms) violations += !read.contains(term.cell);
    }
    if (trees.size() == 2) {
      if (const auto best = oracle::joint_minimum(trees[0], trees[1])) {
        ++compared;
        if (c.retrieval.size() < *best) ++violations;
        optimal += c.retrieval.size() == *best;
      }
    }
  };
  const Scenario sc = load_scenario(oracle::fixture("three_level.json"));
  const auto fh = CubeHierarchy::build(sc.values, sc.config);
  check(fh, {color_tree(fh, sc.region("G")), color_tree(fh, sc.region("Q2"))});
  for (int t = 0; t < 300; ++t) {
    const GridDims d(2 + static_cast<int>(rng() % 11), 2 + static_cast<int>(rng() % 11));
    const std::vector<int> f = rng() % 2 ? std::vector<int>{2, 2} : std::vector<int>{3, 2};
    const auto h = CubeHierarchy::build(oracle::random_values(rng, d), {d, f});
    std::vector<HierarchyTree> trees;
    for (int q = 0; q < 2 + static_cast<int>(rng() % 3); ++q)
      trees.push_back(color_tree(h, oracle::random_region(rng, d, 1 + static_cast<int>(rng() % 3))));
    check(h, trees);
  }
  return {violations == 0,
          std::to_string(instances) + " combined cuts, " + std::to_string(violations) +
              " violations; " + std::to_string(fallbacks) + " used separate plans; joint optimum in " +
              std::to_string(optimal) + "/" + std::to_string(compared) + " brute-forced pairs"};
}

Outcome corner_count() {
  std::mt19937_64 rng(1004);
  int bad = 0, n = 0;
  for (; n < 600; ++n) {
    const int side = 2 + static_cast<int>(rng() % 11);
    const GridDims d(side * 2, side * 2);
    const GridValues v = oracle::random_values(rng, d);
    const auto ps = PrefixSumCube::build(v, {d, {side, 2}});
    const int cx = static_cast<int>(rng() % 2), cy = static_cast<int>(rng() % 2);
    const Rect scope{{cx * side, cy * side}, {cx * side + side - 1, cy * side + side - 1}};
    const auto r = oracle::random_region(rng, d, 1 + static_cast<int>(rng() % 4), &scope);
    const RectilinearSum s = rectilinear_sum(ps, r);
    if (s.corner_terms != classify_corners(r).size() || s.value != oracle::naive_sum(v, r)) ++bad;
  }
  return {bad == 0, std::to_string(n) + " regions, " + std::to_string(bad) + " mismatches"};
}

Outcome distributed_construction() {
  std::mt19937_64 rng(1005);
  const std::vector<std::vector<int>> fanouts{{2, 2}, {3, 2}, {2, 3}, {2, 2, 2}, {3, 2, 2}, {2, 2, 3}};
  int grids = 0, bad = 0;
  long long values = 0;
  for (; grids < 120; ++grids) {
    const auto& f = fanouts[grids % fanouts.size()];
    const GridDims d(1 + static_cast<int>(rng() % 24), 1 + static_cast<int>(rng() % 24));
    const GridValues v = oracle::random_values(rng, d);
    const auto side = oracle::sides(f);
    const Construction c = run_construction(v, {d, f}, grids % 3 == 0);
    for (std::size_t i = 0; i < c.states.size(); ++i) {
      if (c.stats.sent[i] != 1 || c.stats.received[i] > 3) ++bad;
      const NodeState& st = c.states[i];
      const auto sums = simple_summaries(st);
      for (int level = 1; level <= static_cast<int>(sums.size()); ++level, ++values) {
        if (sums[level - 1] != oracle::naive_rect(v, oracle::cell_rect(d, side, level, st.coord))) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(grids) + " grids, " + std::to_string(values) +
                        " junction values, " + std::to_string(bad) + " mismatches"};
}

Outcome failure_recovery() {
  std::mt19937_64 rng(1006);
  std::string detail;
  // (a) single-node failures rebuilt from the three other corners of a square;
  // a clipped cell one location thick has no such square and needs only the
  // single neighbour along it.
  int nodes = 0, bad_a = 0, thin = 0;
  for (int t = 0; t < 40; ++t) {
    const std::vector<int> f{2 + static_cast<int>(rng() % 3), 2};
    const GridDims d(2 + static_cast<int>(rng() % 16), 2 + static_cast<int>(rng() % 16));
    const HierarchyConfig cfg{d, f};
    const Construction c = run_construction(oracle::random_values(rng, d), cfg, false);
    const ConstructionContext ctx(cfg, false);
    for (const NodeState& st : c.states) {
      if (st.junction_level != 0) continue;
      ++nodes;
      const Rect cell = oracle::cell_rect(d, oracle::sides(f), 1, st.coord);
      const std::size_t want = cell.width() > 1 && cell.height() > 1 ? 3 : 1;
      thin += want == 1;
      const auto r = recover_node(ctx, c, {}, st.coord, 1);
      if (!r || r->value != st.stored[0] || r->donors.size() != want) ++bad_a;
    }
  }
  detail += "(a) " + std::to_string(nodes) + " nodes (" + std::to_string(thin) + " in thin cells)/" +
            std::to_string(bad_a) + " bad";

  // (b) level-1 junctions, their forwarded level-2 value.
  int junctions = 0, bad_b = 0;
  for (int t = 0; t < 40; ++t) {
    const int f1 = 2 + static_cast<int>(rng() % 3);
    const GridDims d(f1 * 4, f1 * 4);
    const HierarchyConfig cfg{d, {f1, 2}};
    const GridValues v = oracle::random_values(rng, d);
    const Construction std_c = run_construction(v, cfg, false);
    const Construction red_c = run_construction(v, cfg, true);
    const ConstructionContext std_x(cfg, false), red_x(cfg, true);
    for (const NodeState& st : std_c.states) {
      if (st.junction_level != 1) continue;
      if (st.coord.x == d.width - 1 || st.coord.y == d.height - 1) continue;
      ++junctions;
      const auto s = recover_junction(std_x, std_c, {}, st.coord, 2);
      if (!s || s->value != st.stored[1] || s->distance > 3 * f1) ++bad_b;
      const auto r = recover_node(red_x, red_c, {}, st.coord, 2);
      if (!r || r->value != st.stored[1] || r->donors.size() != 3 || r->distance != 3) ++bad_b;
    }
  }
  detail += ", (b) " + std::to_string(junctions) + " junctions/" + std::to_string(bad_b) + " bad";

  // (c) both right-hand quadrants lost.
  const Scenario sc = load_scenario(oracle::fixture("three_level.json"));
  const auto h = CubeHierarchy::build(sc.values, sc.config);
  const FailureSet fs = sc.failure_set(h, {"fail24"});
  const RectilinearRegion g = sc.region("G");
  const FailurePlan p = plan_with_failures(h, fs, g);
  bool ok_c = !p.plan && p.recovery && p.kind == RecoveryKind::kEstimate &&
              p.recovery->components.size() == 1;
  if (ok_c) {
    const ComponentRecovery& comp = p.recovery->components.front();
    RectilinearRegion lost(h.dims());
    lost.insert(h.cell(labelled(sc, "2")).bounds);
    lost.insert(h.cell(labelled(sc, "4")).bounds);
    const double alive = static_cast<double>(oracle::naive_sum(sc.values, g - lost));
    const double half = static_cast<double>(oracle::naive_sum(sc.values, lost)) / 2.0;
    ok_c = comp.recovered == lost && 2 * comp.requested.size() == comp.recovered.size() &&
           p.recovery->value == alive + half;
    detail += ", (c) estimate " + std::to_string(comp.requested.size()) + "/" +
              std::to_string(comp.recovered.size()) + " of the lost area";
  }
  return {bad_a == 0 && bad_b == 0 && nodes > 0 && junctions > 0 && ok_c, detail};
}

Outcome plan_time_growth() {
  std::mt19937_64 rng(1007);
  // Scattered regions keep most of the tree partial, so the graph grows with
  // the grid.
  auto measure = [&](int side, std::size_t& tree_nodes) {
    const GridDims d(side, side);
    const auto h = CubeHierarchy::build(oracle::random_values(rng, d), {d, {2, 2, 2, 2, 2, 2, 2}});
    RectilinearRegion r(d);
    for (int y = 0; y < side; ++y)
      for (int x = 0; x < side; ++x)
        if (rng() % 3 == 0) r.insert(GridCoord{x, y});
    tree_nodes = color_tree(h, r).nodes.size();
    double best = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto p = plan_region(h, r);
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      if (!p.feasible()) return -1.0;
    }
    return best;
  };
  std::size_t n_small = 0, n_large = 0;
  const double t_small = measure(28, n_small);
  const double t_large = measure(90, n_large);
  const double growth = t_large / t_small;
  const double size_ratio = static_cast<double>(n_large) / static_cast<double>(n_small);
  char buf[160];
  std::snprintf(buf, sizeof buf, "n %zu -> %zu (x%.1f), time %.2fms -> %.2fms (x%.1f)", n_small,
                n_large, size_ratio, t_small * 1e3, t_large * 1e3, growth);
  return {t_small > 0 && t_large > 0 && n_large >= 9000 && growth <= 3.0 * size_ratio, buf};
}

}  // namespace

int main() {
  criterion(1, "worked example: plan of size 4", 1.0, worked_example);
  criterion(2, "multi-query: 6 individual, 5 joint", 1.0, multi_query);
  criterion(3, "prefix-sum example: 81", 0, prefix_example);
  criterion(4, "greedy cover is minimal", 60.0, greedy_is_minimal);
  criterion(5, "cut invariance and minimality", 120.0, cut_invariance);
  criterion(6, "joint cuts pay once per point", 0, no_double_payment);
  criterion(7, "one entry per corner", 0, corner_count);
  criterion(8, "distributed construction", 60.0, distributed_construction);
  criterion(9, "failure recovery", 0, failure_recovery);
  criterion(10, "near-linear plan time", 0, plan_time_growth);
  std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "SOME FAIL", failures);
  return failures == 0 ? 0 : 1;
}
