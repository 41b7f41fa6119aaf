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

#include "gridcube/planner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

namespace gridcube {

Value evaluate(const QueryPlan& plan, const CubeHierarchy& h) {
  Value total = 0;
  for (const PlanTerm& t : plan.terms) total += t.sign * h.value(t.cell);
  return total;
}

std::string format_plan(const QueryPlan& plan, const CubeHierarchy& h) {
  std::ostringstream os;
  bool first = true;
  for (const PlanTerm& t : plan.terms) {
    if (!first) os << ' ';
    os << (t.sign > 0 ? "+ " : "- ") << cell_label(h, t.cell);
    first = false;
  }
  if (first) os << '0';
  os << " = " << plan.value;
  return os.str();
}

namespace {

using NodeKey = std::tuple<bool, CellId, int>;

bool term_order(const PlanTerm& a, const PlanTerm& b) {
  if (a.sign != b.sign) return a.sign > b.sign;
  if (a.cell.level != b.cell.level) return a.cell.level > b.cell.level;
  if (a.cell.cy != b.cell.cy) return a.cell.cy < b.cell.cy;
  return a.cell.cx < b.cell.cx;
}

std::vector<bool> infinite_reach(const FlowNetwork& net, int start, bool forward,
                                 FlowNetwork::Capacity inf) {
  std::vector<std::vector<int>> adj(net.node_count());
  for (int e = 0; e < 2 * net.edge_count(); ++e) {
    if (net.capacity(e) < inf) continue;
    if (forward) {
      adj[net.from(e)].push_back(net.to(e));
    } else {
      adj[net.to(e)].push_back(net.from(e));
    }
  }
  std::vector<bool> seen(net.node_count(), false);
  std::deque<int> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

FlowGraph build_combined_graph(std::span<const HierarchyTree> trees) {
  FlowGraph g;
  g.query_count = static_cast<int>(trees.size());
  std::map<NodeKey, int> node_ids;
  std::map<std::pair<int, int>, int> edge_ids;

  auto add_node = [&](FlowGraph::Node n) {
    g.nodes.push_back(n);
    return g.network.add_node();
  };
  g.source = add_node({});
  g.sink = add_node({});

  for (int q = 0; q < static_cast<int>(trees.size()); ++q) {
    const HierarchyTree& tree = trees[q];
    std::vector<int> net_of(tree.nodes.size(), -1);
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      const TreeNode& tn = tree.nodes[i];
      const NodeKey key{tn.is_root, tn.is_root ? CellId{} : tn.cell,
                        static_cast<int>(tn.color)};
      auto [it, inserted] = node_ids.try_emplace(key, -1);
      if (inserted) {
        FlowGraph::Node n;
        n.cell = tn.cell;
        n.color = tn.color;
        n.is_root = tn.is_root;
        it->second = add_node(n);
      }
      const int id = it->second;
      net_of[i] = id;
      FlowGraph::Node& n = g.nodes[id];
      const bool leaf = tn.children.empty();
      if (tn.is_root || (leaf && tn.color == NodeColor::kWhite)) n.to_sink = true;
      if (leaf && tn.color == NodeColor::kGrey) n.from_source = true;
      if (tn.is_root) continue;

      const int parent = net_of[tn.parent];
      auto [eit, fresh] = edge_ids.try_emplace({id, parent}, -1);
      if (fresh) {
        eit->second = static_cast<int>(g.edges.size());
        FlowGraph::UnitEdge e;
        e.child = id;
        e.parent = parent;
        e.datapoint = tn.cell;
        g.edges.push_back(e);
      }
      FlowGraph::UnitEdge& e = g.edges[eit->second];
      e.infinite = e.infinite || tn.failed;
      if (e.queries.empty() || e.queries.back() != q) e.queries.push_back(q);
    }
  }

  // Replicas of one cell hang off the same parent node. Charging each
  // replica edge separately would pay twice for one read, so a cell with
  // several replicas becomes one hyperedge over {parent, replicas}: it costs 1
  // when the set is split, through a pair of helper nodes a -> b.
  const auto inf = g.infinity();
  std::map<CellId, std::vector<int>> by_datapoint;
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
    by_datapoint[g.edges[i].datapoint].push_back(i);
  }
  for (const auto& [cell, group] : by_datapoint) {
    const int parent = g.edges[group.front()].parent;
    const bool shared = group.size() > 1 && std::all_of(group.begin(), group.end(), [&](int i) {
      return g.edges[i].parent == parent;
    });
    if (!shared) {
      for (int i : group) {
        FlowGraph::UnitEdge& e = g.edges[i];
        const auto cap = e.infinite ? inf : 1;
        e.arc = g.network.add_edge(e.child, e.parent, cap, cap);
      }
      continue;
    }
    bool infinite = false;
    for (int i : group) infinite = infinite || g.edges[i].infinite;
    FlowGraph::Node helper;
    helper.is_helper = true;
    const int a = add_node(helper);
    const int b = add_node(helper);
    const int bridge = g.network.add_edge(a, b, infinite ? inf : 1);
    std::vector<int> members{parent};
    for (int i : group) members.push_back(g.edges[i].child);
    for (int m : members) {
      g.network.add_edge(m, a, inf);
      g.network.add_edge(b, m, inf);
    }
    for (int i : group) {
      g.edges[i].arc = bridge;
      g.edges[i].infinite = infinite;
    }
  }
  for (int v = 0; v < g.network.node_count(); ++v) {
    if (g.nodes[v].from_source) g.network.add_edge(g.source, v, inf);
    if (g.nodes[v].to_sink) g.network.add_edge(v, g.sink, inf);
  }
  return g;
}

FlowGraph build_flow_graph(const HierarchyTree& tree) {
  return build_combined_graph(std::span<const HierarchyTree>(&tree, 1));
}

FlowGraph mark_failed(FlowGraph g, const CellSet& failed) {
  const auto inf = g.infinity();
  for (auto& e : g.edges) {
    if (failed.contains(e.datapoint)) {
      e.infinite = true;
      // Shared replica edges all point at their hyperedge's bridge arc.
      const bool bridge = g.nodes[g.network.from(e.arc)].is_helper;
      g.network.set_capacity(e.arc, inf, bridge ? 0 : inf);
    }
  }
  return g;
}

CutSolution solve_min_cut(const FlowGraph& g, const CubeHierarchy& h) {
  CutSolution out;
  FlowNetwork net = g.network;
  const auto inf = g.infinity();
  const auto flow = net.max_flow(g.source, g.sink, inf);
  if (flow >= inf) {
    out.feasible = false;
    out.cut_value = inf;
    const auto from_s = infinite_reach(g.network, g.source, true, inf);
    const auto to_t = infinite_reach(g.network, g.sink, false, inf);
    CellSet blocking;
    for (const auto& e : g.edges) {
      if (e.infinite && from_s[e.child] && from_s[e.parent] && to_t[e.child] &&
          to_t[e.parent]) {
        blocking.insert(e.datapoint);
      }
    }
    // Report the outermost failures; their failed descendants add nothing.
    for (CellId b : blocking) {
      const GridCoord corner = h.cell(b).bounds.lo;
      bool nested = false;
      for (CellId above : blocking) {
        if (above.level > b.level && h.cell(above).bounds.contains(corner)) nested = true;
      }
      if (!nested) out.blocking.push_back(b);
    }
    return out;
  }
  out.feasible = true;
  out.cut_value = flow;
  out.source_side = net.source_side(g.source);
  out.plans.resize(g.query_count);
  CellSet retrieval;
  for (const auto& e : g.edges) {
    const bool child_s = out.source_side[e.child];
    const bool parent_s = out.source_side[e.parent];
    if (child_s == parent_s) continue;
    retrieval.insert(e.datapoint);
    const int sign = child_s ? +1 : -1;
    for (int q : e.queries) out.plans[q].terms.push_back({e.datapoint, sign});
  }
  for (auto& p : out.plans) {
    std::sort(p.terms.begin(), p.terms.end(), term_order);
    p.value = evaluate(p, h);
  }
  out.retrieval.assign(retrieval.begin(), retrieval.end());
  return out;
}

PlanResult min_cut_plan(const FlowGraph& g, const CubeHierarchy& h) {
  CutSolution s = solve_min_cut(g, h);
  PlanResult r;
  if (s.feasible) {
    r.plan = std::move(s.plans.front());
  } else {
    r.blocking = std::move(s.blocking);
  }
  return r;
}

CombinedPlan combined_plan(std::span<const HierarchyTree> trees, const CubeHierarchy& h) {
  CutSolution s = solve_min_cut(build_combined_graph(trees), h);
  CombinedPlan out;
  out.feasible = s.feasible;
  if (!s.feasible) {
    out.blocking = std::move(s.blocking);
    return out;
  }
  out.plans = std::move(s.plans);
  out.retrieval = std::move(s.retrieval);

  // Shared nodes must sit on one side for every query, which can cost more
  // than planning each query alone; keep whichever reads fewer points.
  std::vector<QueryPlan> alone;
  CellSet read;
  for (const HierarchyTree& t : trees) {
    PlanResult p = min_cut_plan(build_flow_graph(t), h);
    if (!p.feasible()) return out;
    for (const PlanTerm& term : p.plan->terms) read.insert(term.cell);
    alone.push_back(std::move(*p.plan));
  }
  if (read.size() < out.retrieval.size()) {
    out.plans = std::move(alone);
    out.retrieval.assign(read.begin(), read.end());
    out.from_union_graph = false;
  }
  return out;
}

PlanResult plan_region(const CubeHierarchy& h, const RectilinearRegion& region,
                       const CellSet& failed) {
  FlowGraph g = build_flow_graph(color_tree(h, region, failed));
  return min_cut_plan(g, h);
}

}  // namespace gridcube
