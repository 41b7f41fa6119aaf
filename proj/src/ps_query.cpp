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

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>

#include "gridcube/prefix_sum.hpp"

namespace gridcube {
namespace {

using Mask = std::string;  // one byte per grid location

struct Candidate {
  std::vector<PsTerm> terms;
  std::vector<std::size_t> effective;  // grid indices removed from the residual
  int cost = 0;
};

class PsQuerySolver {
 public:
  explicit PsQuerySolver(const PrefixSumCube& ps) : ps_(ps), dims_(ps.hierarchy().dims()) {}

  int solve(const Mask& residual) {
    auto first = residual.find('\1');
    if (first == Mask::npos) return 0;
    if (auto it = memo_.find(residual); it != memo_.end()) return it->second.cost;

    Entry best{std::numeric_limits<int>::max(), {}};
    for (Candidate& c : candidates(residual, dims_.coord(first))) {
      Mask next = residual;
      for (std::size_t i : c.effective) next[i] = '\0';
      const int rest = solve(next);
      if (rest == std::numeric_limits<int>::max()) continue;
      if (c.cost + rest < best.cost) {
        best.cost = c.cost + rest;
        best.choice = std::move(c);
      }
    }
    return memo_.emplace(residual, std::move(best)).first->second.cost;
  }

  PsQueryPlan extract(Mask residual) {
    PsQueryPlan plan;
    plan.cost = solve(residual);
    while (residual.find('\1') != Mask::npos) {
      const Candidate& c = memo_.at(residual).choice;
      plan.terms.insert(plan.terms.end(), c.terms.begin(), c.terms.end());
      for (std::size_t i : c.effective) residual[i] = '\0';
    }
    plan.value = evaluate(plan.terms, ps_);
    return plan;
  }

 private:
  struct Entry {
    int cost;
    Candidate choice;
  };

  bool in(const Mask& m, GridCoord p) const { return m[dims_.index(p)] != '\0'; }

  bool disjoint(const Mask& m, const Rect& r) const {
    for (int y = r.lo.y; y <= r.hi.y; ++y)
      for (int x = r.lo.x; x <= r.hi.x; ++x)
        if (in(m, {x, y})) return false;
    return true;
  }

  // Entries whose covered area contains `u`, the first residual location.
  std::vector<Candidate> candidates(const Mask& residual, GridCoord u) const {
    std::vector<Candidate> out;
    const CubeHierarchy& h = ps_.hierarchy();
    for (int level = 1; level <= ps_.height(); ++level) {
      const CellId base_of_u = h.cell_containing(u, level - 1);
      const CellId owner = ps_.owner({level, base_of_u.cx, base_of_u.cy});
      for (PsPoint s : ps_.cell_points(owner)) {
        if (s.bx < base_of_u.cx || s.by < base_of_u.cy) continue;
        if (auto c = recolor(residual, s, owner)) out.push_back(std::move(*c));
      }
    }
    return out;
  }

  std::optional<Candidate> recolor(const Mask& residual, PsPoint s, CellId owner) const {
    const CubeHierarchy& h = ps_.hierarchy();
    Candidate c;
    c.terms.push_back({s, +1});
    c.cost = 1;
    // Outside part in base units; it must be a union of whole base cells.
    std::map<GridCoord, int> coef;
    const int fan = ps_.config().fanouts[s.level - 1];
    const int ox = owner.cx * fan;
    const int oy = owner.cy * fan;
    for (int by = oy; by <= s.by; ++by) {
      for (int bx = ox; bx <= s.bx; ++bx) {
        const Rect b = h.cell({s.level - 1, bx, by}).bounds;
        std::size_t inside = 0;
        for (int y = b.lo.y; y <= b.hi.y; ++y) {
          for (int x = b.lo.x; x <= b.hi.x; ++x) {
            if (in(residual, {x, y})) {
              ++inside;
              c.effective.push_back(dims_.index({x, y}));
            }
          }
        }
        if (inside == b.area()) continue;
        if (inside != 0) return std::nullopt;
        coef[{bx + 1, by + 1}] += 1;
        coef[{bx, by}] += 1;
        coef[{bx + 1, by}] -= 1;
        coef[{bx, by + 1}] -= 1;
      }
    }
    for (const auto& [lattice, k] : coef) {
      if (k == 0) continue;
      const PsPoint w{s.level, lattice.x - 1, lattice.y - 1};
      if (w.bx < ox || w.by < oy) continue;
      if (!disjoint(residual, ps_.covered(w))) return std::nullopt;
      c.terms.push_back({w, -k});
      ++c.cost;
    }
    return c;
  }

  const PrefixSumCube& ps_;
  GridDims dims_;
  std::unordered_map<Mask, Entry> memo_;
};

}  // namespace

PsQueryPlan ps_query_plan(const PrefixSumCube& ps, const RectilinearRegion& region) {
  if (!(region.dims() == ps.hierarchy().dims())) {
    throw Error(ErrorKind::kBounds, "region is not over the cube's grid");
  }
  Mask residual(region.dims().area(), '\0');
  auto m = region.mask();
  for (std::size_t i = 0; i < m.size(); ++i) residual[i] = m[i] ? '\1' : '\0';
  PsQuerySolver solver(ps);
  return solver.extract(std::move(residual));
}

}  // namespace gridcube
