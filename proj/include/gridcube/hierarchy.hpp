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

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridcube/grid.hpp"

namespace gridcube {

struct HierarchyConfig {
  GridDims dims;
  // fanouts[k-1] is the per-side factor of level k: a level-1 cell is
  // F1 x F1 grid locations, a level-k cell is Fk x Fk level-(k-1) cells.
  std::vector<int> fanouts;

  int height() const noexcept { return static_cast<int>(fanouts.size()); }
  // Side length in grid locations of a level-k cell; period(0) == 1.
  int period(int level) const;
  void validate() const;
};

// Level 0 addresses a single grid location.
struct CellId {
  int level = 0;
  int cx = 0;
  int cy = 0;
  friend constexpr bool operator==(const CellId&, const CellId&) = default;
  friend constexpr auto operator<=>(const CellId&, const CellId&) = default;
};

using CellSet = std::set<CellId>;

struct Cell {
  int level = 0;
  Rect bounds;
  GridCoord junction;  // lower-right corner of bounds
};

class CubeHierarchy {
 public:
  static CubeHierarchy build(const GridValues& values, const HierarchyConfig& config);

  const HierarchyConfig& config() const noexcept { return config_; }
  const GridDims& dims() const noexcept { return config_.dims; }
  int height() const noexcept { return config_.height(); }
  const GridValues& values() const noexcept { return values_; }

  // Number of cells per row / column at a level.
  int cells_x(int level) const;
  int cells_y(int level) const;

  Cell cell(CellId id) const;
  Value value(CellId id) const;
  CellId cell_containing(GridCoord p, int level) const;
  std::vector<CellId> level_cells(int level) const;
  std::vector<CellId> children(CellId id) const;
  std::optional<CellId> parent(CellId id) const;
  bool valid(CellId id) const noexcept;

  // Cells of level >= 1 whose junction is p, by ascending level.
  std::vector<Cell> cells_at(GridCoord p) const;

  // One line per cell: level x0 y0 x1 y1 junction_x junction_y value.
  std::string dump() const;

 private:
  CubeHierarchy(HierarchyConfig config, GridValues values)
      : config_(std::move(config)), values_(std::move(values)) {}

  HierarchyConfig config_;
  GridValues values_;
  // summaries_[k-1] holds the level-k cell sums, row-major over cells.
  std::vector<std::vector<Value>> summaries_;
};

std::vector<Cell> cells_at(const CubeHierarchy& h, GridCoord p);

enum class NodeColor { kGrey, kWhite, kPartial };

struct TreeNode {
  CellId cell;         // unused for the root
  bool is_root = false;
  NodeColor color = NodeColor::kWhite;
  bool failed = false;  // datapoint unreadable
  int parent = -1;
  std::vector<int> children;
};

// Containment tree of the hierarchy relative to one region. Node 0 is the
// synthetic root; it is always on the white side.
struct HierarchyTree {
  std::vector<TreeNode> nodes;
  RectilinearRegion region;
};

// Grey and White subtrees are pruned unless the node's datapoint is in
// `failed` and it has children, in which case it is expanded.
HierarchyTree color_tree(const CubeHierarchy& h, const RectilinearRegion& region,
                         const CellSet& failed = {});

// Cell-id label used in plans: L<level>(x0,y0).
std::string cell_label(const CubeHierarchy& h, CellId id);

}  // namespace gridcube
