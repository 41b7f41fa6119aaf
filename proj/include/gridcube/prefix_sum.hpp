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

#include <map>
#include <span>
#include <vector>

#include "gridcube/hierarchy.hpp"

namespace gridcube {

// One prefix-sum entry. At level k the table is indexed by level-(k-1)
// cells ("base" units; grid locations for k = 1) and each entry sums the
// base cells from its level-k cell's top-left corner down to (bx, by).
struct PsPoint {
  int level = 1;
  int bx = 0;
  int by = 0;
  friend constexpr bool operator==(const PsPoint&, const PsPoint&) = default;
  friend constexpr auto operator<=>(const PsPoint&, const PsPoint&) = default;
};

struct PsTerm {
  PsPoint point;
  int sign = +1;
  friend bool operator==(const PsTerm&, const PsTerm&) = default;
};

class PrefixSumCube {
 public:
  static PrefixSumCube build(const GridValues& values, const HierarchyConfig& config);

  const CubeHierarchy& hierarchy() const noexcept { return hierarchy_; }
  const HierarchyConfig& config() const noexcept { return hierarchy_.config(); }
  int height() const noexcept { return hierarchy_.height(); }

  int base_x(int level) const { return hierarchy_.cells_x(level - 1); }
  int base_y(int level) const { return hierarchy_.cells_y(level - 1); }
  bool valid(PsPoint p) const noexcept;

  Value entry(PsPoint p) const;
  // Level-k cell owning the entry.
  CellId owner(PsPoint p) const;
  // Grid rectangle summed by the entry.
  Rect covered(PsPoint p) const;
  // Grid location storing the entry: the junction of base cell (bx, by).
  GridCoord location(PsPoint p) const;
  // All entries of a level-k cell, row-major.
  std::vector<PsPoint> cell_points(CellId cell) const;

 private:
  explicit PrefixSumCube(CubeHierarchy h) : hierarchy_(std::move(h)) {}

  CubeHierarchy hierarchy_;
  std::vector<std::vector<Value>> tables_;  // tables_[k-1], row-major over base cells
};

// Rectangle in base units of `cell`'s level, inclusive.
struct BaseRect {
  int x0, y0, x1, y1;
};

struct RectangleSum {
  Value value = 0;
  std::vector<PsTerm> points;  // at most 4; entries left of / above the cell are omitted
};

// C + A - B - D with C the lower-right, A the entry diagonally above-left of
// the rectangle, B above-right and D below-left.
RectangleSum rectangle_sum(const PrefixSumCube& ps, CellId cell, const BaseRect& rect);

struct RectilinearSum {
  Value value = 0;
  // Nonzero coefficients after cancellation, one per region corner
  // (per fragment when the region spans several level-1 cells).
  std::size_t corner_terms = 0;
  // corner_terms minus the implicit zero entries on a cell's top/left edge.
  std::size_t points_read = 0;
  std::vector<PsTerm> points;
};

// Level-1 prefix sums only; regions spanning several level-1 cells are cut
// along cell boundaries and each fragment is expanded inside its own cell.
RectilinearSum rectilinear_sum(const PrefixSumCube& ps, const RectilinearRegion& region);

// Lattice point (X, Y) -> signed coefficient for the four-corner expansion of
// each rectangle, without any cancellation between rectangles.
std::vector<std::pair<GridCoord, int>> raw_corner_expansion(std::span<const Rect> rects);

struct PsQueryPlan {
  std::vector<PsTerm> terms;
  Value value = 0;
  int cost = 0;
};

// Minimum-cost selection of grey entries (cost 1) and re-colored entries
// (an entry straddling the residual region, paired with the white entries
// that cancel its outside part; cost = whites + 1) that partitions the region.
PsQueryPlan ps_query_plan(const PrefixSumCube& ps, const RectilinearRegion& region);

Value evaluate(const std::vector<PsTerm>& terms, const PrefixSumCube& ps);

}  // namespace gridcube
