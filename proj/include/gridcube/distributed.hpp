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
#include <string>
#include <vector>

#include "gridcube/hierarchy.hpp"

namespace gridcube {

// slots[i-1] carries the level-i partial sum.
struct Packet {
  GridCoord origin;
  std::vector<Value> slots;
};

struct NodeState {
  GridCoord coord;
  int junction_level = 0;     // highest level whose cell ends at this node
  Value local = 0;            // own sensor reading
  std::vector<Value> stored;  // stored[i-1] = level-i value
};

struct SimStats {
  std::vector<int> sent;      // row-major per node
  std::vector<int> received;  // row-major per node
  long long total_messages = 0;
  int max_received = 0;
};

class ConstructionContext {
 public:
  ConstructionContext(HierarchyConfig config, bool redundant);

  const GridDims& dims() const noexcept { return config_.dims; }
  const HierarchyConfig& config() const noexcept { return config_; }
  int height() const noexcept { return config_.height(); }
  bool redundant() const noexcept { return redundant_; }
  int period(int level) const { return periods_[level]; }

  // Last column/row of a level-k cell (clipped cells end at the grid edge).
  bool ends_column(int x, int level) const {
    return (x + 1) % periods_[level] == 0 || x == dims().width - 1;
  }
  bool ends_row(int y, int level) const {
    return (y + 1) % periods_[level] == 0 || y == dims().height - 1;
  }
  bool is_junction(GridCoord p, int level) const {
    return ends_column(p.x, level) && ends_row(p.y, level);
  }
  int junction_level(GridCoord p) const;
  // Number of levels a node persists: k+1, or k+2 in redundant mode, capped at h.
  int stored_levels(GridCoord p) const;

 private:
  HierarchyConfig config_;
  bool redundant_;
  std::vector<int> periods_;
};

// One protocol step: pa from (x, y-1), pb from (x-1, y), pc from (x-1, y-1).
// Missing packets count as zeros.
std::pair<NodeState, Packet> node_step(const ConstructionContext& ctx, NodeState state,
                                       const Packet* pa, const Packet* pb,
                                       const Packet* pc);

struct Construction {
  std::vector<NodeState> states;  // row-major
  SimStats stats;

  const NodeState& at(const GridDims& d, GridCoord p) const { return states[d.index(p)]; }
};

// Dependency-ordered message passing: a node fires once every existing
// predecessor has delivered, then broadcasts one packet to its successors.
Construction run_construction(const GridValues& values, const HierarchyConfig& config,
                              bool redundant);

// Stored values that are plain cell summaries (levels 1..k).
std::vector<Value> simple_summaries(const NodeState& state);

// `x y k v0 v1 ...` per node.
std::string dump_states(const Construction& c);

}  // namespace gridcube
