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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridcube/hierarchy.hpp"
#include "gridcube/maxflow.hpp"

namespace gridcube {

struct PlanTerm {
  CellId cell;
  int sign = +1;
  friend bool operator==(const PlanTerm&, const PlanTerm&) = default;
};

// Signed datapoints whose signed sum is the region aggregate.
struct QueryPlan {
  std::vector<PlanTerm> terms;
  Value value = 0;

  std::size_t size() const noexcept { return terms.size(); }
};

// Recomputes sum(sign * V(cell)) from the hierarchy.
Value evaluate(const QueryPlan& plan, const CubeHierarchy& h);

// `+ L2(0,0) + L1(6,3) - L1(8,5) = 4711`
std::string format_plan(const QueryPlan& plan, const CubeHierarchy& h);

struct FlowGraph {
  struct Node {
    CellId cell;
    NodeColor color = NodeColor::kWhite;
    bool is_root = false;
    bool from_source = false;  // infinite s -> node
    bool to_sink = false;      // infinite node -> t
    bool is_helper = false;    // hyperedge helper, no cell
  };
  // A containment edge child -- parent. Its datapoint is the child's summary.
  struct UnitEdge {
    int arc = -1;
    int child = -1;
    int parent = -1;
    CellId datapoint;
    bool infinite = false;
    std::vector<int> queries;  // per-query subgraphs containing this edge
  };

  FlowNetwork network;
  int source = -1;
  int sink = -1;
  std::vector<Node> nodes;  // indexed by network node id; s and t included
  std::vector<UnitEdge> edges;
  int query_count = 0;

  // Strictly above the total unit capacity.
  FlowNetwork::Capacity infinity() const noexcept {
    return static_cast<FlowNetwork::Capacity>(edges.size()) + 1;
  }
};

FlowGraph build_flow_graph(const HierarchyTree& tree);

// Union of the per-query graphs. Nodes are shared per (cell, color); a cell
// colored differently by two queries gets one replica per color, and all of
// its replica edges share a single unit of capacity.
FlowGraph build_combined_graph(std::span<const HierarchyTree> trees);

// Containment edges whose datapoint is in `failed` become uncuttable.
FlowGraph mark_failed(FlowGraph g, const CellSet& failed);

struct CutSolution {
  bool feasible = false;
  FlowNetwork::Capacity cut_value = 0;
  std::vector<QueryPlan> plans;      // one per query when feasible
  std::vector<CellId> retrieval;     // distinct datapoints across plans
  std::vector<CellId> blocking;      // failed datapoints forcing an infinite cut
  std::vector<bool> source_side;     // per network node
};

CutSolution solve_min_cut(const FlowGraph& g, const CubeHierarchy& h);

struct PlanResult {
  std::optional<QueryPlan> plan;  // empty when no finite cut exists
  std::vector<CellId> blocking;

  bool feasible() const noexcept { return plan.has_value(); }
};

PlanResult min_cut_plan(const FlowGraph& g, const CubeHierarchy& h);

struct CombinedPlan {
  bool feasible = false;
  std::vector<QueryPlan> plans;
  std::vector<CellId> retrieval;
  std::vector<CellId> blocking;
  bool from_union_graph = true;  // false when separate plans read fewer points
};

// Cut of the combined graph, or the separate per-query plans when those read
// fewer distinct points.
CombinedPlan combined_plan(std::span<const HierarchyTree> trees, const CubeHierarchy& h);

// Convenience: color, build, cut.
PlanResult plan_region(const CubeHierarchy& h, const RectilinearRegion& region,
                       const CellSet& failed = {});

}  // namespace gridcube
