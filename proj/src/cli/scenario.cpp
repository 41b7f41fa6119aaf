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

#include "gridcube/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace gridcube {
namespace {

using nlohmann::json;

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::kParse, where + ": missing '" + key + "'");
  return j.at(key);
}

template <typename T>
T get(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::kParse, where + ": unexpected " + std::string(j.type_name()));
  }
}

std::string position(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

GridValues read_grid(const json& g, std::optional<std::uint64_t> seed_override) {
  const int w = get<int>(need(g, "width", "grid"), "grid.width");
  const int hgt = get<int>(need(g, "height", "grid"), "grid.height");
  if (w < 1 || hgt < 1) fail(ErrorKind::kValidation, "grid dimensions must be positive");
  const GridDims dims(w, hgt);

  std::vector<Value> values;
  if (g.contains("values")) {
    const json& v = g.at("values");
    if (!v.is_array()) fail(ErrorKind::kParse, "grid.values: expected an array");
    if (!v.empty() && v.front().is_array()) {
      for (const json& row : v) {
        for (const json& x : row) values.push_back(get<Value>(x, "grid.values"));
      }
    } else {
      for (const json& x : v) values.push_back(get<Value>(x, "grid.values"));
    }
    if (values.size() != dims.area()) {
      fail(ErrorKind::kValidation, "grid.values holds " + std::to_string(values.size()) +
                                       " numbers, expected " + std::to_string(dims.area()));
    }
  } else if (g.contains("random")) {
    const json& r = g.at("random");
    std::uint64_t seed = get<std::uint64_t>(need(r, "seed", "grid.random"), "grid.random.seed");
    if (seed_override) seed = *seed_override;
    const std::int64_t lo = r.contains("min") ? get<std::int64_t>(r.at("min"), "grid.random.min") : 0;
    const std::int64_t hi = r.contains("max") ? get<std::int64_t>(r.at("max"), "grid.random.max") : 9;
    if (hi < lo) fail(ErrorKind::kValidation, "grid.random: max < min");
    // Plain modulo keeps the stream identical across standard libraries.
    std::mt19937_64 rng(seed);
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    for (std::size_t i = 0; i < dims.area(); ++i) {
      values.push_back(static_cast<Value>(lo + static_cast<std::int64_t>(rng() % span)));
    }
  } else {
    fail(ErrorKind::kParse, "grid: need 'values' or 'random'");
  }
  return GridValues(dims, std::move(values));
}

Rect read_rect(const json& r, const GridDims& dims, const std::string& where) {
  const auto v = get<std::vector<int>>(r, where);
  if (v.size() != 4) fail(ErrorKind::kParse, where + ": a rectangle is [x0, y0, x1, y1]");
  const Rect rect{{v[0], v[1]}, {v[2], v[3]}};
  if (rect.hi.x < rect.lo.x || rect.hi.y < rect.lo.y) {
    fail(ErrorKind::kValidation, where + ": inverted rectangle");
  }
  if (!dims.contains(rect.lo) || !dims.contains(rect.hi)) {
    fail(ErrorKind::kBounds, where + ": rectangle leaves the " + std::to_string(dims.width) +
                                 "x" + std::to_string(dims.height) + " grid");
  }
  return rect;
}

template <typename T>
void check_unique(const std::vector<T>& items, const char* what) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (items[i].name == items[j].name) {
        fail(ErrorKind::kValidation, std::string("duplicate ") + what + " '" + items[i].name + "'");
      }
    }
  }
}

Scenario build(const json& doc, std::optional<std::uint64_t> seed) {
  if (!doc.is_object()) fail(ErrorKind::kParse, "scenario must be a JSON object");
  const int schema = get<int>(need(doc, "schema", "scenario"), "schema");
  if (schema != 1) fail(ErrorKind::kValidation, "unsupported schema " + std::to_string(schema));

  Scenario sc;
  sc.values = read_grid(need(doc, "grid", "scenario"), seed);
  const json& hj = need(doc, "hierarchy", "scenario");
  sc.config.dims = sc.values.dims();
  sc.config.fanouts = get<std::vector<int>>(need(hj, "fanouts", "hierarchy"), "hierarchy.fanouts");
  sc.config.validate();
  if (hj.contains("mode")) {
    const auto mode = get<std::string>(hj.at("mode"), "hierarchy.mode");
    if (mode == "simple") {
      sc.mode = CubeMode::kSimple;
    } else if (mode == "ps") {
      sc.mode = CubeMode::kPrefixSum;
    } else {
      fail(ErrorKind::kValidation, "hierarchy.mode must be simple or ps");
    }
  }
  if (hj.contains("redundant")) sc.redundant = get<bool>(hj.at("redundant"), "hierarchy.redundant");

  for (const json& r : doc.value("regions", json::array())) {
    NamedRegion nr{get<std::string>(need(r, "name", "region"), "region.name"), {}};
    const std::string where = "region '" + nr.name + "'";
    for (const json& rect : need(r, "rects", where)) nr.rects.push_back(read_rect(rect, sc.dims(), where));
    sc.regions.push_back(std::move(nr));
  }
  check_unique(sc.regions, "region");

  for (const json& q : doc.value("queries", json::array())) {
    NamedQuery nq{get<std::string>(need(q, "name", "query"), "query.name"), {}};
    nq.regions = get<std::vector<std::string>>(need(q, "regions", "query"), "query.regions");
    sc.queries.push_back(std::move(nq));
  }
  check_unique(sc.queries, "query");
  for (const NamedQuery& q : sc.queries) {
    for (const std::string& name : q.regions) (void)sc.region(name);
  }

  for (const json& f : doc.value("failures", json::array())) {
    NamedFailures nf{get<std::string>(need(f, "name", "failure"), "failure.name"), {}};
    nf.specs = get<std::vector<std::string>>(need(f, "specs", "failure"), "failure.specs");
    sc.failures.push_back(std::move(nf));
  }
  check_unique(sc.failures, "failure set");

  for (const json& l : doc.value("labels", json::array())) {
    const auto label = get<std::string>(need(l, "label", "label"), "label.label");
    const int level = get<int>(need(l, "level", "label"), "label.level");
    const GridCoord p{get<int>(need(l, "x", "label"), "label.x"), get<int>(need(l, "y", "label"), "label.y")};
    if (level < 0 || level > sc.config.height() || !sc.dims().contains(p)) {
      fail(ErrorKind::kBounds, "label '" + label + "' is off the hierarchy");
    }
    const int side = sc.config.period(level);
    if (p.x % side != 0 || p.y % side != 0) {
      fail(ErrorKind::kResolution, "label '" + label + "' does not name a cell corner");
    }
    sc.labels.push_back({label, CellId{level, p.x / side, p.y / side}});
  }

  // Failure specs are checked once a hierarchy exists; do it eagerly here so a
  // bad file fails at load time.
  const CubeHierarchy h = CubeHierarchy::build(sc.values, sc.config);
  for (const NamedFailures& f : sc.failures) (void)sc.failure_set(h, f.specs);
  return sc;
}

}  // namespace

RectilinearRegion Scenario::region(std::string_view name) const {
  for (const NamedRegion& r : regions) {
    if (r.name == name) return region_from_rectangles(dims(), r.rects);
  }
  fail(ErrorKind::kResolution, "unknown region '" + std::string(name) + "'");
}

std::vector<std::string> Scenario::expand(std::string_view name) const {
  for (const NamedQuery& q : queries) {
    if (q.name == name) return q.regions;
  }
  (void)region(name);
  return {std::string(name)};
}

FailureSet Scenario::failure_set(const CubeHierarchy& h, const std::vector<std::string>& args) const {
  FailureSet out;
  for (const std::string& arg : args) {
    auto named = std::find_if(failures.begin(), failures.end(),
                              [&](const NamedFailures& f) { return f.name == arg; });
    if (named != failures.end()) {
      for (const std::string& spec : named->specs) add_failure_spec(h, out, spec);
    } else if (arg.find(':') != std::string::npos) {
      add_failure_spec(h, out, arg);
    } else {
      fail(ErrorKind::kResolution, "unknown failure set '" + arg + "'");
    }
  }
  return out;
}

std::optional<std::string> Scenario::label(CellId id) const {
  for (const CellLabel& l : labels) {
    if (l.cell == id) return l.label;
  }
  return std::nullopt;
}

Scenario parse_scenario(std::string_view text, std::optional<std::uint64_t> seed) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kParse, "invalid JSON at " + position(text, e.byte));
  }
  return build(doc, seed);
}

Scenario load_scenario(const std::string& path, std::optional<std::uint64_t> seed) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kResolution, "cannot open scenario '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str(), seed);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

}  // namespace gridcube
