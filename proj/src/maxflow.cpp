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

#include "gridcube/maxflow.hpp"

#include <algorithm>
#include <deque>

namespace gridcube {

int FlowNetwork::add_node() {
  adj_.emplace_back();
  return static_cast<int>(adj_.size()) - 1;
}

int FlowNetwork::add_edge(int from, int to, Capacity cap, Capacity rev_cap) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({from, to, cap, 0});
  arcs_.push_back({to, from, rev_cap, 0});
  adj_[from].push_back(id);
  adj_[to].push_back(id + 1);
  return id;
}

void FlowNetwork::set_capacity(int edge, Capacity cap, Capacity rev_cap) {
  arcs_[edge].cap = cap;
  arcs_[edge ^ 1].cap = rev_cap;
}

// Dinic: BFS layers, then blocking flows along them with an explicit stack.
FlowNetwork::Capacity FlowNetwork::max_flow(int source, int sink, Capacity limit) {
  for (Arc& a : arcs_) a.flow = 0;
  Capacity total = 0;
  const int n = node_count();
  std::vector<int> layer(n), next(n), path;
  std::deque<int> queue;
  auto residual = [&](int e) { return arcs_[e].cap - arcs_[e].flow; };

  while (total < limit) {
    std::fill(layer.begin(), layer.end(), -1);
    layer[source] = 0;
    queue.assign(1, source);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int e : adj_[u]) {
        const int v = arcs_[e].to;
        if (layer[v] < 0 && residual(e) > 0) {
          layer[v] = layer[u] + 1;
          queue.push_back(v);
        }
      }
    }
    if (layer[sink] < 0) break;
    std::fill(next.begin(), next.end(), 0);

    path.clear();
    int u = source;
    while (total < limit) {
      if (u == sink) {
        Capacity push = limit - total;
        for (int e : path) push = std::min(push, residual(e));
        for (int e : path) {
          arcs_[e].flow += push;
          arcs_[e ^ 1].flow -= push;
        }
        total += push;
        if (total >= limit) break;
        // Restart from the tail of the first saturated arc.
        std::size_t keep = 0;
        while (residual(path[keep]) > 0) ++keep;
        u = arcs_[path[keep]].from;
        path.resize(keep);
        continue;
      }
      bool advanced = false;
      for (int& i = next[u]; i < static_cast<int>(adj_[u].size()); ++i) {
        const int e = adj_[u][i];
        const int v = arcs_[e].to;
        if (residual(e) > 0 && layer[v] == layer[u] + 1) {
          path.push_back(e);
          u = v;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      if (u == source) break;
      layer[u] = -1;  // dead end for this phase
      u = arcs_[path.back()].from;
      path.pop_back();
      ++next[u];
    }
  }
  return total;
}

std::vector<bool> FlowNetwork::source_side(int source) const {
  std::vector<bool> seen(adj_.size(), false);
  std::deque<int> queue{source};
  seen[source] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int e : adj_[u]) {
      const Arc& a = arcs_[e];
      if (!seen[a.to] && a.cap - a.flow > 0) {
        seen[a.to] = true;
        queue.push_back(a.to);
      }
    }
  }
  return seen;
}

}  // namespace gridcube
