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

#include <random>
#include <set>

#include "doctest.h"
#include "gridcube/region_division.hpp"
#include "oracles.hpp"

using namespace gridcube;

namespace {

void check_tiling(const CubeHierarchy& h, const RectilinearRegion& r, const CellCover& cover) {
  RectilinearRegion seen(h.dims());
  for (CellId id : cover.cells) {
    const Rect b = h.cell(id).bounds;
    CHECK(r.contains_all(b));
    CHECK_FALSE(seen.intersects(b));
    seen.insert(b);
  }
  CHECK(seen == r);
}

}  // namespace

TEST_CASE("greedy cover is an exact tiling of minimum size") {
  std::mt19937_64 rng(21);
  const std::vector<std::vector<int>> fanouts{{2, 2}, {3, 2}, {1, 2, 2}};
  for (const auto& f : fanouts) {
    for (int t = 0; t < 60; ++t) {
      const GridDims d(2 + static_cast<int>(rng() % 11), 2 + static_cast<int>(rng() % 11));
      const auto h = CubeHierarchy::build(GridValues::filled(d, 0), {d, f});
      const auto r = oracle::random_region(rng, d, 1 + static_cast<int>(rng() % 4));
      const CellCover cover = greedy_divide(h, r);
      check_tiling(h, r, cover);
      CHECK(cover.size() == oracle::min_exact_cover(r, f));
    }
  }
}

TEST_CASE("greedy cover of the three-level example") {
  const GridDims d(8, 8);
  const auto h = CubeHierarchy::build(GridValues::filled(d, 1), {d, {1, 2, 2, 2}});
  const std::vector<Rect> g{{{0, 0}, {3, 3}}, {{4, 4}, {7, 7}}, {{2, 4}, {3, 4}}, {{2, 5}, {2, 5}}};
  const auto r = region_from_rectangles(d, g);
  const CellCover cover = greedy_divide(h, r);
  CHECK(cover.size() == 5);
  const std::set<CellId> cells(cover.cells.begin(), cover.cells.end());
  CHECK(cells == std::set<CellId>{{3, 0, 0}, {3, 1, 1}, {1, 2, 4}, {1, 3, 4}, {1, 2, 5}});
}

TEST_CASE("empty and full regions") {
  const GridDims d(6, 6);
  const auto h = CubeHierarchy::build(GridValues::filled(d, 1), {d, {3, 2}});
  CHECK(greedy_divide(h, RectilinearRegion(d)).size() == 0);
  RectilinearRegion all(d);
  all.insert(Rect{{0, 0}, {5, 5}});
  CHECK(greedy_divide(h, all).size() == 1);
}
