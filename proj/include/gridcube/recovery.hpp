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
#include <set>
#include <string>
#include <vector>

#include "gridcube/distributed.hpp"
#include "gridcube/hierarchy.hpp"
#include "gridcube/planner.hpp"

namespace gridcube {

// ---- Node-level recovery over the in-network (prefix-sum) node states ----

struct NodeRecovery {
  Value value = 0;
  std::vector<GridCoord> donors;  // distinct alive nodes read
  int distance = 0;               // sum of Chebyshev distances to the donors

  std::size_t points_read() const noexcept { return donors.size(); }
};

// Rebuilds the level-`level` value of a failed node from one local square of
// its immediate neighbours, using out(r) = a + b - c + base(r). Tries the
// square where the node plays c, then b, then a. Empty when no immediate
// square has every term readable; callers escalate to recover_junction.
std::optional<NodeRecovery> recover_node(const ConstructionContext& ctx,
                                         const Construction& built,
                                         const std::set<GridCoord>& failed,
                                         GridCoord node, int level);

// Full search: local squares on coarser junction lattices (a level-k
// junction's forwarded value lives on the level-k lattice, a distance of
// about 3x the cell side away) and, for a level-i junction, the identity
// value_i = base of level i+1 at that node. Redundant construction makes the
// immediate square sufficient for the forwarded level.
std::optional<NodeRecovery> recover_junction(const ConstructionContext& ctx,
                                             const Construction& built,
                                             const std::set<GridCoord>& failed,
                                             GridCoord node, int level);

// ---- Area failures over the hierarchy ----

struct FailureSet {
  std::set<GridCoord> nodes;  // every datapoint stored at the node is lost
  std::vector<CellId> areas;  // the cell and everything below it is lost
};

// `node:x,y` or `cell:L:x0,y0` (top-left grid corner of a level-L cell).
void add_failure_spec(const CubeHierarchy& h, FailureSet& failures, const std::string& spec);

CellSet failed_datapoints(const CubeHierarchy& h, const FailureSet& failures);
RectilinearRegion failed_locations(const CubeHierarchy& h, const FailureSet& failures);

enum class RecoveryKind { kExact, kEstimate, kUnrecoverable };

struct ComponentRecovery {
  RectilinearRegion requested;  // Q_A: failed locations the query asks for
  RectilinearRegion recovered;  // A: smallest enclosing failed area with a known sum
  int level = -1;               // traversal level where A became computable
  RecoveryKind kind = RecoveryKind::kUnrecoverable;
  Value recovered_sum = 0;      // V(A)
  double value = 0;             // V * |Q_A| / |A|
  std::size_t points_read = 0;
};

struct RecoveryResult {
  RecoveryKind kind = RecoveryKind::kExact;
  double value = 0;
  std::size_t requested_area = 0;  // sum of |Q_A|
  std::size_t recovered_area = 0;  // sum of |A|
  std::size_t points_read = 0;
  std::vector<ComponentRecovery> components;
};

// Bottom-up traversal per connected failed component meeting the query:
// A starts at Q_A and grows to the failed part of ever larger enclosing cells
// until its sum has a finite cut. Exact iff A never grows.
RecoveryResult recover_region(const CubeHierarchy& h, const FailureSet& failures,
                              const RectilinearRegion& query);

struct FailurePlan {
  RecoveryKind kind = RecoveryKind::kExact;
  std::optional<QueryPlan> plan;          // set iff the failure-aware cut is finite
  std::vector<CellId> blocking;
  std::optional<RecoveryResult> recovery; // set iff the cut is infinite
};

FailurePlan plan_with_failures(const CubeHierarchy& h, const FailureSet& failures,
                               const RectilinearRegion& query);

}  // namespace gridcube
