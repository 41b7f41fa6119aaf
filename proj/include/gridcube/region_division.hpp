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

#include <vector>

#include "gridcube/hierarchy.hpp"

namespace gridcube {

// Disjoint hierarchy cells whose union is exactly `region`. Level-0 cells
// (single grid locations) are admitted so unaligned regions stay coverable.
struct CellCover {
  std::vector<CellId> cells;
  RectilinearRegion region;

  std::size_t size() const noexcept { return cells.size(); }
};

// Repeatedly takes a convex corner of the residual region and extracts the
// highest-level cell that has that corner and lies inside the residual.
// The result has the minimum number of cells among all exact covers.
CellCover greedy_divide(const CubeHierarchy& h, const RectilinearRegion& region);

}  // namespace gridcube
