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

#include "gridcube/hierarchy.hpp"

#include <algorithm>
#include <sstream>

#include "gridcube/kernels.hpp"

namespace gridcube {

int HierarchyConfig::period(int level) const {
  int p = 1;
  for (int k = 0; k < level; ++k) p *= fanouts[k];
  return p;
}

void HierarchyConfig::validate() const {
  if (fanouts.empty()) {
    throw Error(ErrorKind::kConfig, "fanout list is empty");
  }
  if (fanouts[0] < 1) {
    throw Error(ErrorKind::kConfig, "level-1 fanout must be >= 1");
  }
  for (std::size_t k = 1; k < fanouts.size(); ++k) {
    if (fanouts[k] < 2) {
      throw Error(ErrorKind::kConfig, "fanouts above level 1 must be >= 2");
    }
  }
}

CubeHierarchy CubeHierarchy::build(const GridValues& values,
                                   const HierarchyConfig& config) {
  config.validate();
  if (!(config.dims == values.dims())) {
    throw Error(ErrorKind::kConfig, "hierarchy dimensions do not match the grid");
  }
  CubeHierarchy h(config, values);
  const auto& k = kernels::active();
  h.summaries_.resize(config.height());
  for (int level = 1; level <= config.height(); ++level) {
    const int nx = h.cells_x(level);
    const int ny = h.cells_y(level);
    auto& out = h.summaries_[level - 1];
    out.assign(static_cast<std::size_t>(nx) * ny, 0);
    // Children of a level-k cell form an F x F block (clipped) one level down.
    const int fan = config.fanouts[level - 1];
    const Value* below = level == 1 ? values.row_major().data()
                                    : h.summaries_[level - 2].data();
    const int below_w = level == 1 ? config.dims.width : h.cells_x(level - 1);
    const int below_h = level == 1 ? config.dims.height : h.cells_y(level - 1);
    for (int cy = 0; cy < ny; ++cy) {
      for (int cx = 0; cx < nx; ++cx) {
        const int x0 = cx * fan;
        const int y0 = cy * fan;
        const int w = std::min(fan, below_w - x0);
        const int hh = std::min(fan, below_h - y0);
        out[static_cast<std::size_t>(cy) * nx + cx] =
            k.block_sum(below + static_cast<std::size_t>(y0) * below_w + x0,
                        below_w, w, hh);
      }
    }
  }
  return h;
}

int CubeHierarchy::cells_x(int level) const {
  const int p = config_.period(level);
  return (dims().width + p - 1) / p;
}

int CubeHierarchy::cells_y(int level) const {
  const int p = config_.period(level);
  return (dims().height + p - 1) / p;
}

bool CubeHierarchy::valid(CellId id) const noexcept {
  return id.level >= 0 && id.level <= height() && id.cx >= 0 && id.cy >= 0 &&
         id.cx < cells_x(id.level) && id.cy < cells_y(id.level);
}

Cell CubeHierarchy::cell(CellId id) const {
  if (!valid(id)) throw Error(ErrorKind::kBounds, "no such cell");
  const int p = config_.period(id.level);
  Rect b{{id.cx * p, id.cy * p},
         {std::min((id.cx + 1) * p, dims().width) - 1,
          std::min((id.cy + 1) * p, dims().height) - 1}};
  return Cell{id.level, b, b.hi};
}

Value CubeHierarchy::value(CellId id) const {
  if (!valid(id)) throw Error(ErrorKind::kBounds, "no such cell");
  if (id.level == 0) return values_.at({id.cx, id.cy});
  return summaries_[id.level - 1][static_cast<std::size_t>(id.cy) * cells_x(id.level) + id.cx];
}

CellId CubeHierarchy::cell_containing(GridCoord p, int level) const {
  if (!dims().contains(p)) throw Error(ErrorKind::kBounds, "point outside grid");
  const int period = config_.period(level);
  return {level, p.x / period, p.y / period};
}

std::vector<CellId> CubeHierarchy::level_cells(int level) const {
  std::vector<CellId> out;
  for (int cy = 0; cy < cells_y(level); ++cy)
    for (int cx = 0; cx < cells_x(level); ++cx) out.push_back({level, cx, cy});
  return out;
}

std::vector<CellId> CubeHierarchy::children(CellId id) const {
  std::vector<CellId> out;
  if (id.level == 0) return out;
  const int fan = config_.fanouts[id.level - 1];
  const int lx = cells_x(id.level - 1);
  const int ly = cells_y(id.level - 1);
  for (int cy = id.cy * fan; cy < std::min((id.cy + 1) * fan, ly); ++cy)
    for (int cx = id.cx * fan; cx < std::min((id.cx + 1) * fan, lx); ++cx)
      out.push_back({id.level - 1, cx, cy});
  return out;
}

std::optional<CellId> CubeHierarchy::parent(CellId id) const {
  if (id.level >= height()) return std::nullopt;
  const int fan = config_.fanouts[id.level];
  return CellId{id.level + 1, id.cx / fan, id.cy / fan};
}

std::vector<Cell> CubeHierarchy::cells_at(GridCoord p) const {
  if (!dims().contains(p)) throw Error(ErrorKind::kBounds, "point outside grid");
  std::vector<Cell> out;
  for (int level = 1; level <= height(); ++level) {
    Cell c = cell(cell_containing(p, level));
    if (c.junction == p) out.push_back(c);
  }
  return out;
}

std::vector<Cell> cells_at(const CubeHierarchy& h, GridCoord p) { return h.cells_at(p); }

std::string CubeHierarchy::dump() const {
  std::ostringstream os;
  for (int level = 1; level <= height(); ++level) {
    for (CellId id : level_cells(level)) {
      Cell c = cell(id);
      os << level << ' ' << c.bounds.lo.x << ' ' << c.bounds.lo.y << ' '
         << c.bounds.hi.x << ' ' << c.bounds.hi.y << ' ' << c.junction.x << ' '
         << c.junction.y << ' ' << value(id) << '\n';
    }
  }
  return os.str();
}

std::string cell_label(const CubeHierarchy& h, CellId id) {
  Cell c = h.cell(id);
  return "L" + std::to_string(id.level) + "(" + std::to_string(c.bounds.lo.x) + "," +
         std::to_string(c.bounds.lo.y) + ")";
}

namespace {

// Counts region locations inside a rectangle in O(1).
class RegionCounter {
 public:
  explicit RegionCounter(const RectilinearRegion& r)
      : w_(r.dims().width + 1), table_(static_cast<std::size_t>(w_) * (r.dims().height + 1), 0) {
    const GridDims& d = r.dims();
    for (int y = 0; y < d.height; ++y)
      for (int x = 0; x < d.width; ++x)
        at(x + 1, y + 1) = at(x, y + 1) + at(x + 1, y) - at(x, y) + (r.contains({x, y}) ? 1 : 0);
  }
  std::size_t count(const Rect& b) const {
    return static_cast<std::size_t>(at(b.hi.x + 1, b.hi.y + 1) - at(b.lo.x, b.hi.y + 1) -
                                    at(b.hi.x + 1, b.lo.y) + at(b.lo.x, b.lo.y));
  }

 private:
  long long& at(int x, int y) { return table_[static_cast<std::size_t>(y) * w_ + x]; }
  long long at(int x, int y) const { return table_[static_cast<std::size_t>(y) * w_ + x]; }
  int w_;
  std::vector<long long> table_;
};

}  // namespace

HierarchyTree color_tree(const CubeHierarchy& h, const RectilinearRegion& region,
                         const CellSet& failed) {
  if (!(region.dims() == h.dims())) {
    throw Error(ErrorKind::kBounds, "region is not over the hierarchy's grid");
  }
  HierarchyTree tree;
  tree.region = region;
  RegionCounter counter(region);
  TreeNode root;
  root.is_root = true;
  root.color = NodeColor::kWhite;
  tree.nodes.push_back(root);

  std::vector<std::pair<CellId, int>> stack;
  auto top = h.level_cells(h.height());
  for (auto it = top.rbegin(); it != top.rend(); ++it) stack.push_back({*it, 0});
  while (!stack.empty()) {
    auto [id, parent] = stack.back();
    stack.pop_back();
    const Cell c = h.cell(id);
    const std::size_t inside = counter.count(c.bounds);
    TreeNode node;
    node.cell = id;
    node.parent = parent;
    node.failed = failed.contains(id);
    node.color = inside == c.bounds.area() ? NodeColor::kGrey
                 : inside == 0             ? NodeColor::kWhite
                                           : NodeColor::kPartial;
    const int idx = static_cast<int>(tree.nodes.size());
    tree.nodes[parent].children.push_back(idx);
    tree.nodes.push_back(std::move(node));
    const bool expand = id.level > 0 && (tree.nodes[idx].color == NodeColor::kPartial ||
                                         tree.nodes[idx].failed);
    if (expand) {
      auto kids = h.children(id);
      for (auto k = kids.rbegin(); k != kids.rend(); ++k) stack.push_back({*k, idx});
    }
  }
  return tree;
}

}  // namespace gridcube
