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

#include "gridcube/recovery.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace gridcube {
namespace {

class Reader {
 public:
  Reader(const ConstructionContext& ctx, const Construction& built,
         const std::set<GridCoord>& failed)
      : ctx_(ctx), built_(built), failed_(failed) {}

  const ConstructionContext& ctx() const { return ctx_; }

  bool alive(GridCoord p) const { return ctx_.dims().contains(p) && !failed_.count(p); }
  bool readable(GridCoord p, int level) const {
    return alive(p) && level <= static_cast<int>(state(p).stored.size());
  }
  Value out(GridCoord p, int level) const { return state(p).stored[level - 1]; }
  Value local(GridCoord p) const { return state(p).local; }

  // Neighbouring lines of the level-j lattice; -1 when there is none.
  int prev_col(int x, int j) const {
    for (int c = x - 1; c >= 0; --c)
      if (ctx_.ends_column(c, j)) return c;
    return -1;
  }
  int prev_row(int y, int j) const {
    for (int r = y - 1; r >= 0; --r)
      if (ctx_.ends_row(r, j)) return r;
    return -1;
  }
  int next_col(int x, int j) const {
    for (int c = x + 1; c < ctx_.dims().width; ++c)
      if (ctx_.ends_column(c, j)) return c;
    return -1;
  }
  int next_row(int y, int j) const {
    for (int r = y + 1; r < ctx_.dims().height; ++r)
      if (ctx_.ends_row(r, j)) return r;
    return -1;
  }

 private:
  const NodeState& state(GridCoord p) const { return built_.at(ctx_.dims(), p); }

  const ConstructionContext& ctx_;
  const Construction& built_;
  const std::set<GridCoord>& failed_;
};

struct Term {
  GridCoord at;
  int level;
  int coef;
  bool raw = false;  // the sensor reading rather than a stored value
};

// 0 = -out_i(r) + [no x reset] out_i(px, ry) + [no y reset] out_i(rx, py)
//     - [neither] out_i(px, py) + base_i(r), over lattice j.
std::vector<Term> identity(const Reader& rd, GridCoord r, int level, int j) {
  const int p = rd.ctx().period(level);
  const int px = rd.prev_col(r.x, j);
  const int py = rd.prev_row(r.y, j);
  const bool x_open = px >= 0 && px / p == r.x / p;
  const bool y_open = py >= 0 && py / p == r.y / p;

  std::vector<Term> t{{r, level, -1}};
  if (x_open) t.push_back({{px, r.y}, level, +1});
  if (y_open) t.push_back({{r.x, py}, level, +1});
  if (x_open && y_open) t.push_back({{px, py}, level, -1});
  if (level == 1) {
    t.push_back({r, 1, +1, true});
  } else if (rd.ctx().junction_level(r) >= level - 1) {
    t.push_back({r, level - 1, +1});
  }
  return t;
}

struct Partial {
  Value value = 0;
  std::set<GridCoord> donors;
};

// Solves the identity for the term equal to out_level(f); the rest must be
// readable.
std::optional<Partial> isolate(const Reader& rd, const std::vector<Term>& terms,
                               GridCoord f, int level) {
  int coef = 0;
  for (const Term& t : terms)
    if (!t.raw && t.at == f && t.level == level) coef = t.coef;
  if (coef == 0) return std::nullopt;
  Partial acc;
  for (const Term& t : terms) {
    if (!t.raw && t.at == f && t.level == level) continue;
    if (t.raw ? !rd.alive(t.at) : !rd.readable(t.at, t.level)) return std::nullopt;
    acc.value += t.coef * (t.raw ? rd.local(t.at) : rd.out(t.at, t.level));
    acc.donors.insert(t.at);
  }
  acc.value = -coef * acc.value;
  return acc;
}

// Downstream squares on lattice j, in role order c, b, a.
std::optional<Partial> local_square(const Reader& rd, GridCoord f, int level, int j) {
  if (!rd.ctx().is_junction(f, j)) return std::nullopt;
  const int nx = rd.next_col(f.x, j);
  const int ny = rd.next_row(f.y, j);
  std::vector<GridCoord> anchors;
  if (nx >= 0 && ny >= 0) anchors.push_back({nx, ny});
  if (nx >= 0) anchors.push_back({nx, f.y});
  if (ny >= 0) anchors.push_back({f.x, ny});
  for (GridCoord r : anchors) {
    if (auto got = isolate(rd, identity(rd, r, level, j), f, level)) return got;
  }
  return std::nullopt;
}

std::optional<Partial> search(const Reader& rd, GridCoord f, int level, bool full) {
  const int lattices = full ? level : 1;
  for (int j = 0; j < lattices; ++j) {
    if (auto got = local_square(rd, f, level, j)) return got;
  }
  if (!full || level >= rd.ctx().height() || !rd.ctx().is_junction(f, level)) {
    return std::nullopt;
  }
  // At a level-i junction, out_i is the base of level i+1.
  auto upper = search(rd, f, level + 1, true);
  if (!upper) return std::nullopt;
  std::vector<Term> terms = identity(rd, f, level + 1, level);
  Partial acc = *upper;
  for (const Term& t : terms) {
    if (t.at == f) continue;  // the target and its base
    if (!rd.readable(t.at, t.level)) return std::nullopt;
    acc.value -= t.coef * rd.out(t.at, t.level);
    acc.donors.insert(t.at);
  }
  return acc;
}

std::optional<NodeRecovery> finish(std::optional<Partial> got, GridCoord f) {
  if (!got) return std::nullopt;
  NodeRecovery r;
  r.value = got->value;
  r.donors.assign(got->donors.begin(), got->donors.end());
  for (GridCoord d : r.donors) r.distance += std::max(std::abs(d.x - f.x), std::abs(d.y - f.y));
  return r;
}

void check_target(const ConstructionContext& ctx, GridCoord f, int level) {
  if (!ctx.dims().contains(f)) throw Error(ErrorKind::kBounds, "node outside the grid");
  if (level < 1 || level > ctx.height()) {
    throw Error(ErrorKind::kBounds, "level " + std::to_string(level) + " outside 1.." +
                                        std::to_string(ctx.height()));
  }
}

}  // namespace

std::optional<NodeRecovery> recover_node(const ConstructionContext& ctx,
                                         const Construction& built,
                                         const std::set<GridCoord>& failed,
                                         GridCoord node, int level) {
  check_target(ctx, node, level);
  std::set<GridCoord> down = failed;
  down.insert(node);
  return finish(search(Reader(ctx, built, down), node, level, false), node);
}

std::optional<NodeRecovery> recover_junction(const ConstructionContext& ctx,
                                             const Construction& built,
                                             const std::set<GridCoord>& failed,
                                             GridCoord node, int level) {
  check_target(ctx, node, level);
  std::set<GridCoord> down = failed;
  down.insert(node);
  return finish(search(Reader(ctx, built, down), node, level, true), node);
}

}  // namespace gridcube
