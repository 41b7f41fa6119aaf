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

#include "gridcube/distributed.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <tuple>

namespace gridcube {

ConstructionContext::ConstructionContext(HierarchyConfig config, bool redundant)
    : config_(std::move(config)), redundant_(redundant) {
  config_.validate();
  for (int k = 0; k <= config_.height(); ++k) periods_.push_back(config_.period(k));
}

int ConstructionContext::junction_level(GridCoord p) const {
  int k = 0;
  while (k < height() && is_junction(p, k + 1)) ++k;
  return k;
}

int ConstructionContext::stored_levels(GridCoord p) const {
  return std::min(junction_level(p) + (redundant_ ? 2 : 1), height());
}

std::pair<NodeState, Packet> node_step(const ConstructionContext& ctx, NodeState state,
                                       const Packet* pa, const Packet* pb,
                                       const Packet* pc) {
  const GridCoord p = state.coord;
  auto check = [&](const Packet* pk, GridCoord expected) {
    if (pk == nullptr) return;
    if (!(pk->origin == expected) || static_cast<int>(pk->slots.size()) != ctx.height()) {
      throw Error(ErrorKind::kIntegrity,
                  "node (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                      ") got a packet from the wrong origin");
    }
  };
  check(pa, {p.x, p.y - 1});
  check(pb, {p.x - 1, p.y});
  check(pc, {p.x - 1, p.y - 1});

  const int h = ctx.height();
  state.junction_level = ctx.junction_level(p);
  Packet out{p, std::vector<Value>(h, 0)};
  for (int i = 1; i <= h; ++i) {
    Value a = pa ? pa->slots[i - 1] : 0;
    Value b = pb ? pb->slots[i - 1] : 0;
    Value c = pc ? pc->slots[i - 1] : 0;
    // The left (upper) neighbour sits in a different level-i cell.
    if (p.x % ctx.period(i) == 0) b = c = 0;
    if (p.y % ctx.period(i) == 0) a = c = 0;
    const Value combined = a + b - c;
    Value base = 0;
    if (i == 1) {
      base = state.local;
    } else if (state.junction_level >= i - 1) {
      base = out.slots[i - 2];
    }
    out.slots[i - 1] = combined + base;
  }
  const int keep = ctx.stored_levels(p);
  state.stored.assign(out.slots.begin(), out.slots.begin() + keep);
  return {std::move(state), std::move(out)};
}

Construction run_construction(const GridValues& values, const HierarchyConfig& config,
                              bool redundant) {
  if (!(config.dims == values.dims())) {
    throw Error(ErrorKind::kConfig, "hierarchy dimensions do not match the grid");
  }
  const ConstructionContext ctx(config, redundant);
  const GridDims& d = ctx.dims();
  const std::size_t n = d.area();

  Construction result;
  result.states.resize(n);
  result.stats.sent.assign(n, 0);
  result.stats.received.assign(n, 0);

  struct Mailbox {
    std::optional<Packet> a, b, c;
    int delivered = 0;
    int expected = 0;
  };
  std::vector<Mailbox> mail(n);
  for (std::size_t i = 0; i < n; ++i) {
    const GridCoord p = d.coord(i);
    mail[i].expected = (p.x > 0) + (p.y > 0) + (p.x > 0 && p.y > 0);
  }

  // Wavefront order: (x + y, y) keeps runs reproducible.
  using Key = std::tuple<int, int, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  ready.push({0, 0, 0});
  std::vector<bool> fired(n, false);

  while (!ready.empty()) {
    auto [diag, y, x] = ready.top();
    ready.pop();
    const GridCoord p{x, y};
    const std::size_t i = d.index(p);
    Mailbox& box = mail[i];
    if (fired[i] || box.delivered != box.expected) {
      throw Error(ErrorKind::kIntegrity, "node scheduled before its predecessors sent");
    }
    fired[i] = true;
    NodeState st;
    st.coord = p;
    st.local = values.at(p);
    auto [state, packet] = node_step(ctx, std::move(st), box.a ? &*box.a : nullptr,
                                     box.b ? &*box.b : nullptr, box.c ? &*box.c : nullptr);
    result.states[i] = std::move(state);
    box = Mailbox{};

    ++result.stats.sent[i];
    ++result.stats.total_messages;
    const GridCoord successors[] = {{x + 1, y}, {x, y + 1}, {x + 1, y + 1}};
    for (int s = 0; s < 3; ++s) {
      const GridCoord q = successors[s];
      if (!d.contains(q)) continue;
      const std::size_t j = d.index(q);
      Mailbox& dst = mail[j];
      if (s == 0) dst.b = packet;
      if (s == 1) dst.a = packet;
      if (s == 2) dst.c = packet;
      ++dst.delivered;
      ++result.stats.received[j];
      if (dst.delivered == dst.expected) ready.push({q.x + q.y, q.y, q.x});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!fired[i]) throw Error(ErrorKind::kIntegrity, "node never fired");
  }
  result.stats.max_received =
      *std::max_element(result.stats.received.begin(), result.stats.received.end());
  return result;
}

std::vector<Value> simple_summaries(const NodeState& state) {
  const std::size_t k = std::min<std::size_t>(state.junction_level, state.stored.size());
  return {state.stored.begin(), state.stored.begin() + k};
}

std::string dump_states(const Construction& c) {
  std::ostringstream os;
  for (const NodeState& s : c.states) {
    os << s.coord.x << ' ' << s.coord.y << ' ' << s.junction_level;
    for (Value v : s.stored) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace gridcube
