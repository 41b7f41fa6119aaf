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

#include "gridcube/prefix_sum.hpp"

#include <algorithm>

#include "gridcube/kernels.hpp"

namespace gridcube {

PrefixSumCube PrefixSumCube::build(const GridValues& values, const HierarchyConfig& config) {
  PrefixSumCube ps(CubeHierarchy::build(values, config));
  const CubeHierarchy& h = ps.hierarchy_;
  const auto& k = kernels::active();
  ps.tables_.resize(h.height());
  std::vector<Value> base;
  for (int level = 1; level <= h.height(); ++level) {
    const int bw = ps.base_x(level);
    const int bh = ps.base_y(level);
    base.resize(static_cast<std::size_t>(bw) * bh);
    for (int by = 0; by < bh; ++by)
      for (int bx = 0; bx < bw; ++bx)
        base[static_cast<std::size_t>(by) * bw + bx] = h.value({level - 1, bx, by});
    auto& table = ps.tables_[level - 1];
    table.assign(base.size(), 0);
    const int fan = config.fanouts[level - 1];
    for (CellId cell : h.level_cells(level)) {
      const int x0 = cell.cx * fan;
      const int y0 = cell.cy * fan;
      const int w = std::min(fan, bw - x0);
      const int hh = std::min(fan, bh - y0);
      const std::size_t off = static_cast<std::size_t>(y0) * bw + x0;
      k.prefix_2d(base.data() + off, bw, w, hh, table.data() + off, bw);
    }
  }
  return ps;
}

bool PrefixSumCube::valid(PsPoint p) const noexcept {
  return p.level >= 1 && p.level <= height() && p.bx >= 0 && p.by >= 0 &&
         p.bx < base_x(p.level) && p.by < base_y(p.level);
}

Value PrefixSumCube::entry(PsPoint p) const {
  if (!valid(p)) throw Error(ErrorKind::kBounds, "no such prefix-sum entry");
  return tables_[p.level - 1][static_cast<std::size_t>(p.by) * base_x(p.level) + p.bx];
}

CellId PrefixSumCube::owner(PsPoint p) const {
  const int fan = config().fanouts[p.level - 1];
  return {p.level, p.bx / fan, p.by / fan};
}

Rect PrefixSumCube::covered(PsPoint p) const {
  const Cell cell = hierarchy_.cell(owner(p));
  const Cell last = hierarchy_.cell({p.level - 1, p.bx, p.by});
  return {cell.bounds.lo, last.bounds.hi};
}

GridCoord PrefixSumCube::location(PsPoint p) const {
  return hierarchy_.cell({p.level - 1, p.bx, p.by}).junction;
}

std::vector<PsPoint> PrefixSumCube::cell_points(CellId cell) const {
  std::vector<PsPoint> out;
  const int fan = config().fanouts[cell.level - 1];
  const int x1 = std::min((cell.cx + 1) * fan, base_x(cell.level));
  const int y1 = std::min((cell.cy + 1) * fan, base_y(cell.level));
  for (int by = cell.cy * fan; by < y1; ++by)
    for (int bx = cell.cx * fan; bx < x1; ++bx) out.push_back({cell.level, bx, by});
  return out;
}

Value evaluate(const std::vector<PsTerm>& terms, const PrefixSumCube& ps) {
  Value total = 0;
  for (const PsTerm& t : terms) total += t.sign * ps.entry(t.point);
  return total;
}

RectangleSum rectangle_sum(const PrefixSumCube& ps, CellId cell, const BaseRect& r) {
  const int fan = ps.config().fanouts[cell.level - 1];
  const int cx0 = cell.cx * fan;
  const int cy0 = cell.cy * fan;
  const int cx1 = std::min(cx0 + fan, ps.base_x(cell.level)) - 1;
  const int cy1 = std::min(cy0 + fan, ps.base_y(cell.level)) - 1;
  if (r.x0 > r.x1 || r.y0 > r.y1 || r.x0 < cx0 || r.y0 < cy0 || r.x1 > cx1 || r.y1 > cy1) {
    throw Error(ErrorKind::kBounds, "rectangle is not inside the cell");
  }
  RectangleSum out;
  auto use = [&](int bx, int by, int sign) {
    if (bx < cx0 || by < cy0) return;
    out.points.push_back({{cell.level, bx, by}, sign});
  };
  use(r.x1, r.y1, +1);          // C
  use(r.x0 - 1, r.y0 - 1, +1);  // A
  use(r.x1, r.y0 - 1, -1);      // B
  use(r.x0 - 1, r.y1, -1);      // D
  out.value = evaluate(out.points, ps);
  return out;
}

std::vector<std::pair<GridCoord, int>> raw_corner_expansion(std::span<const Rect> rects) {
  std::vector<std::pair<GridCoord, int>> out;
  for (const Rect& r : rects) {
    out.push_back({{r.hi.x + 1, r.hi.y + 1}, +1});
    out.push_back({{r.lo.x, r.lo.y}, +1});
    out.push_back({{r.hi.x + 1, r.lo.y}, -1});
    out.push_back({{r.lo.x, r.hi.y + 1}, -1});
  }
  return out;
}

RectilinearSum rectilinear_sum(const PrefixSumCube& ps, const RectilinearRegion& region) {
  const CubeHierarchy& h = ps.hierarchy();
  if (!(region.dims() == h.dims())) {
    throw Error(ErrorKind::kBounds, "region is not over the cube's grid");
  }
  RectilinearSum out;
  for (CellId cell : h.level_cells(1)) {
    const Rect b = h.cell(cell).bounds;
    if (!region.intersects(b)) continue;
    std::map<GridCoord, int> coef;
    for (int y = b.lo.y; y <= b.hi.y; ++y) {
      for (int x = b.lo.x; x <= b.hi.x; ++x) {
        if (!region.contains({x, y})) continue;
        coef[{x + 1, y + 1}] += 1;
        coef[{x, y}] += 1;
        coef[{x + 1, y}] -= 1;
        coef[{x, y + 1}] -= 1;
      }
    }
    for (const auto& [lattice, c] : coef) {
      if (c == 0) continue;
      ++out.corner_terms;
      const int bx = lattice.x - 1;
      const int by = lattice.y - 1;
      if (bx < b.lo.x || by < b.lo.y) continue;
      ++out.points_read;
      out.points.push_back({{1, bx, by}, c});
    }
  }
  out.value = evaluate(out.points, ps);
  return out;
}

}  // namespace gridcube
