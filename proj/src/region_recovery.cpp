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

#include <cmath>
#include <limits>
#include <regex>

#include "gridcube/recovery.hpp"

namespace gridcube {
namespace {

void add_subtree(const CubeHierarchy& h, CellId id, CellSet& out) {
  out.insert(id);
  if (id.level == 0) return;
  for (CellId c : h.children(id)) add_subtree(h, c, out);
}

RectilinearRegion cells_meeting(const CubeHierarchy& h, const RectilinearRegion& area,
                                int level) {
  RectilinearRegion out(h.dims());
  CellSet seen;
  for (GridCoord p : area.cells()) {
    const CellId id = h.cell_containing(p, level);
    if (seen.insert(id).second) out.insert(h.cell(id).bounds);
  }
  return out;
}

}  // namespace

void add_failure_spec(const CubeHierarchy& h, FailureSet& failures, const std::string& spec) {
  static const std::regex node_re(R"(node:(-?\d+),(-?\d+))");
  static const std::regex cell_re(R"(cell:(-?\d+):(-?\d+),(-?\d+))");
  std::smatch m;
  if (std::regex_match(spec, m, node_re)) {
    const GridCoord p{std::stoi(m[1]), std::stoi(m[2])};
    if (!h.dims().contains(p)) throw Error(ErrorKind::kBounds, "failed node outside the grid: " + spec);
    failures.nodes.insert(p);
    return;
  }
  if (std::regex_match(spec, m, cell_re)) {
    const int level = std::stoi(m[1]);
    const GridCoord p{std::stoi(m[2]), std::stoi(m[3])};
    if (level < 0 || level > h.height()) {
      throw Error(ErrorKind::kBounds, "failed cell level out of range: " + spec);
    }
    if (!h.dims().contains(p)) throw Error(ErrorKind::kBounds, "failed cell outside the grid: " + spec);
    const int side = h.config().period(level);
    if (p.x % side != 0 || p.y % side != 0) {
      throw Error(ErrorKind::kResolution, "no level-" + std::to_string(level) +
                                              " cell starts at " + spec.substr(spec.rfind(':') + 1));
    }
    failures.areas.push_back(CellId{level, p.x / side, p.y / side});
    return;
  }
  throw Error(ErrorKind::kParse, "bad failure spec '" + spec + "' (want node:x,y or cell:L:x,y)");
}

CellSet failed_datapoints(const CubeHierarchy& h, const FailureSet& failures) {
  CellSet out;
  for (GridCoord p : failures.nodes) {
    out.insert(CellId{0, p.x, p.y});
    for (const Cell& c : h.cells_at(p)) out.insert(h.cell_containing(c.bounds.lo, c.level));
  }
  for (CellId id : failures.areas) add_subtree(h, id, out);
  return out;
}

RectilinearRegion failed_locations(const CubeHierarchy& h, const FailureSet& failures) {
  RectilinearRegion out(h.dims());
  for (GridCoord p : failures.nodes) out.insert(p);
  for (CellId id : failures.areas) out.insert(h.cell(id).bounds);
  return out;
}

RecoveryResult recover_region(const CubeHierarchy& h, const FailureSet& failures,
                              const RectilinearRegion& query) {
  const CellSet lost = failed_datapoints(h, failures);
  const RectilinearRegion down = failed_locations(h, failures);
  RecoveryResult result;

  const RectilinearRegion rest = query - down;
  if (!rest.empty()) {
    const PlanResult plan = plan_region(h, rest, lost);
    if (!plan.feasible()) {
      // Alive locations always have their own reading; keep the guard honest.
      throw Error(ErrorKind::kIntegrity, "no plan over alive locations");
    }
    result.value += static_cast<double>(plan.plan->value);
    result.points_read += plan.plan->size();
  }

  for (const RectilinearRegion& k : down.components()) {
    ComponentRecovery comp;
    comp.requested = k & query;
    if (comp.requested.empty()) continue;
    std::optional<RectilinearRegion> tried;
    for (int level = 0; level <= h.height() + 1; ++level) {
      // One step past the top covers the whole failed component.
      RectilinearRegion a = level == 0 ? comp.requested
                            : level > h.height() ? k
                                                 : k & cells_meeting(h, comp.requested, level);
      if (tried && *tried == a) continue;
      tried = a;
      const PlanResult plan = plan_region(h, a, lost);
      if (!plan.feasible()) continue;
      comp.level = std::min(level, h.height());
      comp.recovered = std::move(a);
      comp.recovered_sum = plan.plan->value;
      comp.points_read = plan.plan->size();
      comp.kind = comp.recovered == comp.requested ? RecoveryKind::kExact : RecoveryKind::kEstimate;
      comp.value = static_cast<double>(comp.recovered_sum) *
                   static_cast<double>(comp.requested.size()) /
                   static_cast<double>(comp.recovered.size());
      break;
    }
    result.requested_area += comp.requested.size();
    if (comp.kind == RecoveryKind::kUnrecoverable) {
      result.kind = RecoveryKind::kUnrecoverable;
    } else {
      result.recovered_area += comp.recovered.size();
      result.points_read += comp.points_read;
      result.value += comp.value;
      if (comp.kind == RecoveryKind::kEstimate && result.kind == RecoveryKind::kExact) {
        result.kind = RecoveryKind::kEstimate;
      }
    }
    result.components.push_back(std::move(comp));
  }
  if (result.kind == RecoveryKind::kUnrecoverable) {
    result.value = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

FailurePlan plan_with_failures(const CubeHierarchy& h, const FailureSet& failures,
                               const RectilinearRegion& query) {
  FailurePlan out;
  PlanResult plan = plan_region(h, query, failed_datapoints(h, failures));
  out.blocking = std::move(plan.blocking);
  if (plan.feasible()) {
    out.kind = RecoveryKind::kExact;
    out.plan = std::move(plan.plan);
    return out;
  }
  out.recovery = recover_region(h, failures, query);
  out.kind = out.recovery->kind;
  return out;
}

}  // namespace gridcube
