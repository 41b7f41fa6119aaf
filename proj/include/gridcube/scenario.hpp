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
#include <string_view>
#include <utility>
#include <vector>

#include "gridcube/hierarchy.hpp"
#include "gridcube/recovery.hpp"

namespace gridcube {

enum class CubeMode { kSimple, kPrefixSum };

struct NamedRegion {
  std::string name;
  std::vector<Rect> rects;
};

struct NamedQuery {
  std::string name;
  std::vector<std::string> regions;
};

struct NamedFailures {
  std::string name;
  std::vector<std::string> specs;
};

struct CellLabel {
  std::string label;
  CellId cell;
};

// A validated scenario file. Every name it mentions resolves and every piece
// of geometry lies on the grid.
struct Scenario {
  GridValues values;
  HierarchyConfig config;
  CubeMode mode = CubeMode::kSimple;
  bool redundant = false;
  std::vector<NamedRegion> regions;
  std::vector<NamedQuery> queries;
  std::vector<NamedFailures> failures;
  std::vector<CellLabel> labels;

  const GridDims& dims() const noexcept { return config.dims; }

  RectilinearRegion region(std::string_view name) const;
  // A region name, or a query name expanding to its batch of regions.
  std::vector<std::string> expand(std::string_view name) const;
  // Each argument is a named failure set or a literal node:/cell: spec.
  FailureSet failure_set(const CubeHierarchy& h, const std::vector<std::string>& args) const;
  std::optional<std::string> label(CellId id) const;
};

// `seed` overrides the seed of a random grid.
Scenario parse_scenario(std::string_view text, std::optional<std::uint64_t> seed = {});
Scenario load_scenario(const std::string& path, std::optional<std::uint64_t> seed = {});

}  // namespace gridcube
