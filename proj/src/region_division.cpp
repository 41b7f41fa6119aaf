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

#include "gridcube/region_division.hpp"

namespace gridcube {
namespace {

bool has_lattice_corner(const Rect& b, GridCoord corner) {
  const bool x_edge = corner.x == b.lo.x || corner.x == b.hi.x + 1;
  const bool y_edge = corner.y == b.lo.y || corner.y == b.hi.y + 1;
  return x_edge && y_edge;
}

}  // namespace

CellCover greedy_divide(const CubeHierarchy& h, const RectilinearRegion& region) {
  if (!(region.dims() == h.dims())) {
    throw Error(ErrorKind::kBounds, "region is not over the hierarchy's grid");
  }
  CellCover cover{{}, region};
  RectilinearRegion residual = region;
  const GridDims& d = h.dims();
  std::size_t scan = 0;
  while (!residual.empty()) {
    // The first convex corner in top-to-bottom, left-to-right lattice order
    // is always the top-left corner of the first residual location.
    while (!residual.mask()[scan]) ++scan;
    const GridCoord u = d.coord(scan);
    const GridCoord corner = u;
    CellId chosen{0, u.x, u.y};
    for (int level = h.height(); level >= 1; --level) {
      const CellId id = h.cell_containing(u, level);
      const Cell c = h.cell(id);
      if (has_lattice_corner(c.bounds, corner) && residual.contains_all(c.bounds)) {
        chosen = id;
        break;
      }
    }
    residual.erase(h.cell(chosen).bounds);
    cover.cells.push_back(chosen);
  }
  return cover;
}

}  // namespace gridcube
