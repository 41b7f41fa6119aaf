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

#include <cstdint>
#include <vector>

namespace gridcube {

// Max flow by blocking flows over shortest-path layers. Each edge is stored as a
// pair of opposing arcs so undirected edges are a single AddEdge call.
class FlowNetwork {
 public:
  using Capacity = std::int64_t;

  explicit FlowNetwork(int nodes = 0) : adj_(nodes) {}

  int add_node();
  int node_count() const noexcept { return static_cast<int>(adj_.size()); }

  // Returns the id of the forward arc; the reverse arc is id ^ 1.
  int add_edge(int from, int to, Capacity cap, Capacity rev_cap = 0);
  void set_capacity(int edge, Capacity cap, Capacity rev_cap);

  int from(int edge) const { return arcs_[edge].from; }
  int to(int edge) const { return arcs_[edge].to; }
  Capacity capacity(int edge) const { return arcs_[edge].cap; }
  Capacity flow(int edge) const { return arcs_[edge].flow; }
  int edge_count() const noexcept { return static_cast<int>(arcs_.size() / 2); }

  // Runs from scratch; stops early once flow reaches `limit`.
  Capacity max_flow(int source, int sink, Capacity limit);

  // Nodes reachable from the source in the residual graph after max_flow:
  // the minimal source side among all minimum cuts.
  std::vector<bool> source_side(int source) const;

 private:
  struct Arc {
    int from;
    int to;
    Capacity cap;
    Capacity flow;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace gridcube
