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

#include "doctest.h"
#include "gridcube/distributed.hpp"
#include "oracles.hpp"

using namespace gridcube;

namespace {

// Value a node must hold for level i once the wave has passed: the sum over
// its level-i cell of every complete level-(i-1) cell whose lower-right
// corner is at or above-left of the node (the node's own reading at i = 1).
Value expected_slot(const GridValues& v, const std::vector<int>& f, GridCoord p, int level) {
  const auto side = oracle::sides(f);
  const GridDims d = v.dims();
  const Rect cell = oracle::cell_rect(d, side, level, p);
  Value s = 0;
  const int b = side[level - 1];
  for (int y = cell.lo.y; y <= p.y; y += b) {
    for (int x = cell.lo.x; x <= p.x; x += b) {
      const Rect base = oracle::cell_rect(d, side, level - 1, {x, y});
      if (base.hi.x <= p.x && base.hi.y <= p.y) s += oracle::naive_rect(v, base);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("single node grid") {
  const GridDims d(1, 1);
  const Construction c = run_construction(GridValues(d, {5}), {d, {1}}, false);
  CHECK(c.stats.sent[0] == 1);
  CHECK(c.stats.received[0] == 0);
  CHECK(c.stats.total_messages == 1);
  REQUIRE(c.states[0].stored.size() == 1);
  CHECK(c.states[0].stored[0] == 5);
}

TEST_CASE("junction levels and storage") {
  const GridDims d(8, 8);
  const ConstructionContext ctx({d, {2, 2, 2}}, false);
  CHECK(ctx.junction_level({0, 0}) == 0);
  CHECK(ctx.junction_level({1, 1}) == 1);
  CHECK(ctx.junction_level({3, 3}) == 2);
  CHECK(ctx.junction_level({7, 7}) == 3);
  CHECK(ctx.junction_level({3, 1}) == 1);
  CHECK(ctx.stored_levels({0, 0}) == 1);
  CHECK(ctx.stored_levels({3, 3}) == 3);
  CHECK(ctx.stored_levels({7, 7}) == 3);
  const ConstructionContext red({d, {2, 2, 2}}, true);
  CHECK(red.stored_levels({0, 0}) == 2);
  CHECK(red.stored_levels({1, 1}) == 3);
}

TEST_CASE("every stored slot matches the partial-sum oracle") {
  std::mt19937_64 rng(41);
  const std::vector<std::vector<int>> fanouts{{2, 2}, {3, 2}, {2, 3, 2}, {1, 2}, {4}};
  for (const auto& f : fanouts) {
    for (int t = 0; t < 8; ++t) {
      const GridDims d(1 + static_cast<int>(rng() % 15), 1 + static_cast<int>(rng() % 15));
      const GridValues v = oracle::random_values(rng, d);
      for (bool redundant : {false, true}) {
        const Construction c = run_construction(v, {d, f}, redundant);
        for (const NodeState& st : c.states) {
          for (int level = 1; level <= static_cast<int>(st.stored.size()); ++level) {
            CHECK(st.stored[level - 1] == expected_slot(v, f, st.coord, level));
          }
        }
      }
    }
  }
}

TEST_CASE("message accounting") {
  std::mt19937_64 rng(42);
  const GridDims d(9, 6);
  const Construction c = run_construction(oracle::random_values(rng, d), {d, {3, 2}}, false);
  for (std::size_t i = 0; i < c.states.size(); ++i) {
    const GridCoord p = d.coord(i);
    CHECK(c.stats.sent[i] == 1);
    CHECK(c.stats.received[i] == (p.x > 0) + (p.y > 0) + (p.x > 0 && p.y > 0));
  }
  CHECK(c.stats.total_messages == 54);
  CHECK(c.stats.max_received == 3);
}

TEST_CASE("junction summaries equal the centralized cube") {
  std::mt19937_64 rng(43);
  const GridDims d(9, 6);
  const GridValues v = oracle::random_values(rng, d);
  const auto side = oracle::sides({3, 2});
  const Construction c = run_construction(v, {d, {3, 2}}, false);
  for (const NodeState& st : c.states) {
    const auto sums = simple_summaries(st);
    CHECK(static_cast<int>(sums.size()) == st.junction_level);
    for (int level = 1; level <= static_cast<int>(sums.size()); ++level) {
      CHECK(sums[level - 1] == oracle::naive_rect(v, oracle::cell_rect(d, side, level, st.coord)));
    }
  }
}

TEST_CASE("packets from the wrong neighbour are rejected") {
  const GridDims d(3, 3);
  const ConstructionContext ctx({d, {3}}, false);
  NodeState st;
  st.coord = {1, 1};
  const Packet wrong{{0, 0}, {1}};
  try {
    node_step(ctx, st, &wrong, nullptr, nullptr);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIntegrity);
  }
}

TEST_CASE("state dump format") {
  const GridDims d(2, 1);
  const Construction c = run_construction(GridValues(d, {3, 4}), {d, {2}}, false);
  CHECK(dump_states(c) == "0 0 0 3\n1 0 1 7\n");
}
