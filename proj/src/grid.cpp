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

#include "gridcube/grid.hpp"

#include <algorithm>

#include "gridcube/kernels.hpp"

namespace gridcube {

GridDims::GridDims(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) {
    throw Error(ErrorKind::kValidation, "grid dimensions must be at least 1x1");
  }
}

GridValues::GridValues(GridDims dims, std::vector<Value> row_major)
    : dims_(dims), values_(std::move(row_major)) {
  if (values_.size() != dims_.area()) {
    throw Error(ErrorKind::kValidation,
                "grid has " + std::to_string(values_.size()) + " values, expected " +
                    std::to_string(dims_.area()));
  }
}

GridValues GridValues::filled(GridDims dims, Value v) {
  return GridValues(dims, std::vector<Value>(dims.area(), v));
}

Value GridValues::sum(const Rect& r) const {
  Value total = 0;
  for (int y = r.lo.y; y <= r.hi.y; ++y) {
    for (int x = r.lo.x; x <= r.hi.x; ++x) total += at({x, y});
  }
  return total;
}

RectilinearRegion::RectilinearRegion(GridDims dims)
    : dims_(dims), mask_(dims.area(), 0) {}

void RectilinearRegion::insert(GridCoord p) {
  auto& m = mask_[dims_.index(p)];
  if (!m) {
    m = 1;
    ++count_;
  }
}

void RectilinearRegion::erase(GridCoord p) {
  auto& m = mask_[dims_.index(p)];
  if (m) {
    m = 0;
    --count_;
  }
}

void RectilinearRegion::insert(const Rect& r) {
  for (int y = r.lo.y; y <= r.hi.y; ++y)
    for (int x = r.lo.x; x <= r.hi.x; ++x) insert(GridCoord{x, y});
}

void RectilinearRegion::erase(const Rect& r) {
  for (int y = r.lo.y; y <= r.hi.y; ++y)
    for (int x = r.lo.x; x <= r.hi.x; ++x) erase(GridCoord{x, y});
}

bool RectilinearRegion::contains_all(const Rect& r) const {
  return overlap(r) == r.area();
}

bool RectilinearRegion::intersects(const Rect& r) const {
  for (int y = r.lo.y; y <= r.hi.y; ++y)
    for (int x = r.lo.x; x <= r.hi.x; ++x)
      if (mask_[dims_.index({x, y})]) return true;
  return false;
}

std::size_t RectilinearRegion::overlap(const Rect& r) const {
  std::size_t n = 0;
  for (int y = r.lo.y; y <= r.hi.y; ++y)
    for (int x = r.lo.x; x <= r.hi.x; ++x) n += mask_[dims_.index({x, y})];
  return n;
}

std::vector<GridCoord> RectilinearRegion::cells() const {
  std::vector<GridCoord> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(dims_.coord(i));
  return out;
}

std::vector<Rect> RectilinearRegion::row_runs() const {
  std::vector<Rect> runs;
  for (int y = 0; y < dims_.height; ++y) {
    int x = 0;
    while (x < dims_.width) {
      if (!contains({x, y})) {
        ++x;
        continue;
      }
      int start = x;
      while (x < dims_.width && contains({x, y})) ++x;
      runs.push_back({{start, y}, {x - 1, y}});
    }
  }
  return runs;
}

std::vector<RectilinearRegion> RectilinearRegion::components() const {
  std::vector<RectilinearRegion> out;
  std::vector<std::uint8_t> seen(mask_.size(), 0);
  std::vector<GridCoord> stack;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (!mask_[i] || seen[i]) continue;
    RectilinearRegion comp(dims_);
    stack.push_back(dims_.coord(i));
    seen[i] = 1;
    while (!stack.empty()) {
      GridCoord p = stack.back();
      stack.pop_back();
      comp.insert(p);
      const GridCoord nbrs[] = {{p.x - 1, p.y}, {p.x + 1, p.y}, {p.x, p.y - 1}, {p.x, p.y + 1}};
      for (GridCoord q : nbrs) {
        if (!contains(q)) continue;
        auto& s = seen[dims_.index(q)];
        if (!s) {
          s = 1;
          stack.push_back(q);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

namespace {

template <typename Op>
RectilinearRegion combine(const RectilinearRegion& a, const RectilinearRegion& b, Op op) {
  if (!(a.dims() == b.dims())) {
    throw Error(ErrorKind::kValidation, "regions over different grids");
  }
  RectilinearRegion out(a.dims());
  auto ma = a.mask();
  auto mb = b.mask();
  for (std::size_t i = 0; i < ma.size(); ++i)
    if (op(ma[i] != 0, mb[i] != 0)) out.insert(a.dims().coord(i));
  return out;
}

}  // namespace

RectilinearRegion RectilinearRegion::operator&(const RectilinearRegion& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && y; });
}
RectilinearRegion RectilinearRegion::operator|(const RectilinearRegion& o) const {
  return combine(*this, o, [](bool x, bool y) { return x || y; });
}
RectilinearRegion RectilinearRegion::operator-(const RectilinearRegion& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && !y; });
}

RectilinearRegion region_from_rectangles(GridDims dims, std::span<const Rect> rects) {
  RectilinearRegion region(dims);
  for (const Rect& r : rects) {
    if (r.lo.x > r.hi.x || r.lo.y > r.hi.y) {
      throw Error(ErrorKind::kValidation, "rectangle corners are inverted");
    }
    if (!dims.contains(r.lo) || !dims.contains(r.hi)) {
      throw Error(ErrorKind::kBounds, "rectangle lies outside the grid");
    }
    region.insert(r);
  }
  return region;
}

bool region_contains(const RectilinearRegion& region, GridCoord p) {
  return region.contains(p);
}

Value region_sum(const GridValues& values, const RectilinearRegion& region) {
  if (!(values.dims() == region.dims())) {
    throw Error(ErrorKind::kValidation, "region and values over different grids");
  }
  auto v = values.row_major();
  return kernels::active().masked_sum(v.data(), region.mask().data(), v.size());
}

std::vector<CornerClassification> classify_corners(const RectilinearRegion& region) {
  std::vector<CornerClassification> out;
  if (region.empty()) return out;
  const GridDims& d = region.dims();
  for (int y = 0; y <= d.height; ++y) {
    for (int x = 0; x <= d.width; ++x) {
      const bool ul = region.contains({x - 1, y - 1});
      const bool ur = region.contains({x, y - 1});
      const bool ll = region.contains({x - 1, y});
      const bool lr = region.contains({x, y});
      const int inside = ul + ur + ll + lr;
      // Two cells touching only diagonally pinch the boundary: one point,
      // convex for both of them.
      const bool pinch = inside == 2 && ul == lr;
      if (inside == 1 || pinch) out.push_back({{x, y}, CornerKind::kConvex});
      if (inside == 3) out.push_back({{x, y}, CornerKind::kConcave});
    }
  }
  return out;
}

}  // namespace gridcube
