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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gridcube {

#if defined(GRIDCUBE_FLOAT_VALUES)
using Value = double;
#else
using Value = std::int64_t;
#endif

enum class ErrorKind {
  kBounds,
  kValidation,
  kConfig,
  kParse,
  kResolution,
  kIntegrity,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// (0,0) is the top-left grid location; x grows rightwards, y downwards.
struct GridCoord {
  int x = 0;
  int y = 0;
  friend constexpr bool operator==(GridCoord, GridCoord) = default;
  friend constexpr auto operator<=>(GridCoord a, GridCoord b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

struct GridDims {
  int width = 1;
  int height = 1;

  GridDims() = default;
  GridDims(int w, int h);

  std::size_t area() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool contains(GridCoord p) const noexcept {
    return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;
  }
  std::size_t index(GridCoord p) const noexcept {
    return static_cast<std::size_t>(p.y) * width + p.x;
  }
  GridCoord coord(std::size_t i) const noexcept {
    return {static_cast<int>(i % width), static_cast<int>(i / width)};
  }
  friend bool operator==(const GridDims&, const GridDims&) = default;
};

// Inclusive rectangle of grid locations.
struct Rect {
  GridCoord lo;
  GridCoord hi;

  int width() const noexcept { return hi.x - lo.x + 1; }
  int height() const noexcept { return hi.y - lo.y + 1; }
  std::size_t area() const noexcept {
    return static_cast<std::size_t>(width()) * height();
  }
  bool contains(GridCoord p) const noexcept {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
  bool contains(const Rect& r) const noexcept {
    return contains(r.lo) && contains(r.hi);
  }
  bool intersects(const Rect& r) const noexcept {
    return lo.x <= r.hi.x && r.lo.x <= hi.x && lo.y <= r.hi.y && r.lo.y <= hi.y;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

class GridValues {
 public:
  GridValues() = default;
  GridValues(GridDims dims, std::vector<Value> row_major);
  static GridValues filled(GridDims dims, Value v);

  const GridDims& dims() const noexcept { return dims_; }
  Value at(GridCoord p) const { return values_[dims_.index(p)]; }
  std::span<const Value> row_major() const noexcept { return values_; }

  // Brute-force sum over a rectangle; used as the oracle everywhere.
  Value sum(const Rect& r) const;

 private:
  GridDims dims_;
  std::vector<Value> values_;
};

// Set of grid locations, stored as a bitmap over the grid.
class RectilinearRegion {
 public:
  RectilinearRegion() = default;
  explicit RectilinearRegion(GridDims dims);

  const GridDims& dims() const noexcept { return dims_; }
  bool contains(GridCoord p) const noexcept {
    return dims_.contains(p) && mask_[dims_.index(p)] != 0;
  }
  bool empty() const noexcept { return count_ == 0; }
  std::size_t size() const noexcept { return count_; }

  void insert(GridCoord p);
  void erase(GridCoord p);
  void insert(const Rect& r);
  void erase(const Rect& r);

  bool contains_all(const Rect& r) const;
  bool intersects(const Rect& r) const;
  std::size_t overlap(const Rect& r) const;

  // Locations in row-major order.
  std::vector<GridCoord> cells() const;
  std::span<const std::uint8_t> mask() const noexcept { return mask_; }

  // Maximal horizontal runs, one rectangle per run.
  std::vector<Rect> row_runs() const;
  // 4-connected components.
  std::vector<RectilinearRegion> components() const;

  RectilinearRegion operator&(const RectilinearRegion& o) const;
  RectilinearRegion operator|(const RectilinearRegion& o) const;
  RectilinearRegion operator-(const RectilinearRegion& o) const;
  friend bool operator==(const RectilinearRegion& a, const RectilinearRegion& b) {
    return a.dims_ == b.dims_ && a.mask_ == b.mask_;
  }

 private:
  GridDims dims_{};
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

RectilinearRegion region_from_rectangles(GridDims dims, std::span<const Rect> rects);
bool region_contains(const RectilinearRegion& region, GridCoord p);

Value region_sum(const GridValues& values, const RectilinearRegion& region);

enum class CornerKind { kConvex, kConcave };

// A corner is a lattice point; lattice point (x,y) is the top-left corner of
// grid location (x,y), so lattice coordinates run 0..width and 0..height.
struct CornerClassification {
  GridCoord corner;
  CornerKind kind;
  friend bool operator==(const CornerClassification&,
                         const CornerClassification&) = default;
};

// Corners in lattice row-major order. A point where two inside cells touch
// only diagonally is listed once, as convex.
std::vector<CornerClassification> classify_corners(const RectilinearRegion& region);

}  // namespace gridcube
