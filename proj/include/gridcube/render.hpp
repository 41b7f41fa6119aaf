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

#include <functional>
#include <optional>
#include <string>

#include "gridcube/planner.hpp"

namespace gridcube {

struct RenderOptions {
  int cell_px = 24;
  // Display alias for a plan cell (e.g. "b"); the cell label is used otherwise.
  std::function<std::optional<std::string>(CellId)> alias;
};

// Grid lines, hierarchy boundaries (thicker per level), shaded region and the
// plan's cells outlined with their signs. Output depends only on the inputs.
std::string render_svg(const CubeHierarchy& h, const RectilinearRegion& region,
                       const QueryPlan* plan, const RenderOptions& options = {});

}  // namespace gridcube
