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

// Independent reference implementations the library is checked against.
// None of them call into the code under test beyond plain data accessors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gridcube/grid.hpp"
#include "gridcube/hierarchy.hpp"

namespace oracle {

using gridcube::GridCoord;
using gridcube::GridDims;
using gridcube::GridValues;
using gridcube::Rect;
using gridcube::RectilinearRegion;
using gridcube::Value;

inline std::string fixture(const std::string& name) {
  return std::string(GRIDCUBE_FIXTURES) + "/" + name;
}

inline Value naive_sum(const GridValues& v, const RectilinearRegion& r) {
  Value s = 0;
  for (int y = 0; y < v.dims().height; ++y)
    for (int x = 0; x < v.dims().width; ++x)
      if (r.contains({x, y})) s += v.at({x, y});
  return s;
}

inline Value naive_rect(const GridValues& v, Rect r) {
  Value s = 0;
  for (int y = r.lo.y; y <= r.hi.y; ++y)
    for (int x = r.lo.x; x <= r.hi.x; ++x) s += v.at({x, y});
  return s;
}

inline GridValues random_values(std::mt19937_64& rng, GridDims d, int lo = -20, int hi = 50) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<Value> v(d.area());
  for (Value& x : v) x = dist(rng);
  return GridValues(d, std::move(v));
}

inline Rect random_rect(std::mt19937_64& rng, GridDims d, int max_side = 0) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  int x0 = pick(d.width), y0 = pick(d.height);
  int x1 = pick(d.width), y1 = pick(d.height);
  if (x1 < x0) std::swap(x0, x1);
  if (y1 < y0) std::swap(y0, y1);
  if (max_side > 0) {
    x1 = std::min(x1, x0 + max_side - 1);
    y1 = std::min(y1, y0 + max_side - 1);
  }
  return {{x0, y0}, {x1, y1}};
}

// Union of a few random rectangles, optionally confined to `box`.
inline RectilinearRegion random_region(std::mt19937_64& rng, GridDims d, int rects,
                                       const Rect* box = nullptr) {
  RectilinearRegion r(d);
  for (int i = 0; i < rects; ++i) {
    Rect q = random_rect(rng, d);
    if (box) {
      q.lo.x = box->lo.x + q.lo.x % box->width();
      q.lo.y = box->lo.y + q.lo.y % box->height();
      q.hi.x = std::min(box->hi.x, q.lo.x + q.width() % box->width());
      q.hi.y = std::min(box->hi.y, q.lo.y + q.height() % box->height());
    }
    r.insert(q);
  }
  return r;
}

// Cell side per level computed straight from the fanout list.
inline std::vector<int> sides(const std::vector<int>& fanouts) {
  std::vector<int> s{1};
  for (int f : fanouts) s.push_back(s.back() * f);
  return s;
}

// Grid rectangle of the level-`level` cell containing p, clipped to the grid.
inline Rect cell_rect(GridDims d, const std::vector<int>& side, int level, GridCoord p) {
  const int s = side[level];
  Rect r{{p.x / s * s, p.y / s * s}, {}};
  r.hi = {std::min(d.width - 1, r.lo.x + s - 1), std::min(d.height - 1, r.lo.y + s - 1)};
  return r;
}

// Minimum number of disjoint hierarchy cells tiling a region exactly. Cells
// form a laminar family, so a cell inside the region is always best taken
// whole and anything else must be split into its children.
inline std::size_t min_exact_cover(const RectilinearRegion& region, const std::vector<int>& fanouts) {
  const GridDims d = region.dims();
  const auto side = sides(fanouts);
  std::function<std::size_t(int, Rect)> cover = [&](int level, Rect cell) -> std::size_t {
    std::size_t inside = 0;
    for (int y = cell.lo.y; y <= cell.hi.y; ++y)
      for (int x = cell.lo.x; x <= cell.hi.x; ++x) inside += region.contains({x, y});
    if (inside == 0) return 0;
    if (inside == cell.area()) return 1;
    std::size_t total = 0;
    const int s = side[level - 1];
    for (int y = cell.lo.y; y <= cell.hi.y; y += s)
      for (int x = cell.lo.x; x <= cell.hi.x; x += s)
        total += cover(level - 1, cell_rect(d, side, level - 1, {x, y}));
    return total;
  };
  const int top = static_cast<int>(fanouts.size());
  std::size_t total = 0;
  for (int y = 0; y < d.height; y += side[top])
    for (int x = 0; x < d.width; x += side[top]) total += cover(top, cell_rect(d, side, top, {x, y}));
  return total;
}

// Two-dimensional prefix sum of `v` restricted to `box`, ending at p.
inline Value box_prefix(const GridValues& v, Rect box, GridCoord p) {
  return naive_rect(v, {box.lo, p});
}

}  // namespace oracle
