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

#include "gridcube/render.hpp"

#include <sstream>

namespace gridcube {
namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const CubeHierarchy& h, const RectilinearRegion& region,
                       const QueryPlan* plan, const RenderOptions& options) {
  const int s = options.cell_px;
  const int pad = s;
  const GridDims& d = h.dims();
  const int w = d.width * s + 2 * pad;
  const int ht = d.height * s + 2 * pad;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << ht
      << "\" viewBox=\"0 0 " << w << ' ' << ht << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << ht << "\" fill=\"white\"/>\n";

  out << "<g fill=\"#b8b8b8\">\n";
  for (const Rect& r : region.row_runs()) {
    out << "<rect x=\"" << pad + r.lo.x * s << "\" y=\"" << pad + r.lo.y * s << "\" width=\""
        << r.width() * s << "\" height=\"" << r.height() * s << "\"/>\n";
  }
  out << "</g>\n";

  // Level 0 is the plain grid; every level above draws a heavier stroke.
  for (int level = 0; level <= h.height(); ++level) {
    out << "<g fill=\"none\" stroke=\"#404040\" stroke-width=\"" << 0.5 + level << "\">\n";
    for (CellId id : h.level_cells(level)) {
      const Rect b = h.cell(id).bounds;
      out << "<rect x=\"" << pad + b.lo.x * s << "\" y=\"" << pad + b.lo.y * s << "\" width=\""
          << b.width() * s << "\" height=\"" << b.height() * s << "\"/>\n";
    }
    out << "</g>\n";
  }

  if (plan != nullptr) {
    out << "<g fill=\"none\" stroke-width=\"3\" font-family=\"monospace\" font-size=\""
        << s * 2 / 3 << "\">\n";
    for (const PlanTerm& t : plan->terms) {
      const Rect b = h.cell(t.cell).bounds;
      const char* colour = t.sign > 0 ? "#1f6fd1" : "#d1361f";
      std::string name = cell_label(h, t.cell);
      if (options.alias) {
        if (auto a = options.alias(t.cell)) name = *a;
      }
      out << "<rect x=\"" << pad + b.lo.x * s + 2 << "\" y=\"" << pad + b.lo.y * s + 2
          << "\" width=\"" << b.width() * s - 4 << "\" height=\"" << b.height() * s - 4
          << "\" stroke=\"" << colour << "\"/>\n";
      out << "<text x=\"" << pad + b.lo.x * s + 4 << "\" y=\"" << pad + b.lo.y * s + s * 2 / 3
          << "\" fill=\"" << colour << "\" stroke=\"none\">" << (t.sign > 0 ? '+' : '-') << escape(name)
          << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace gridcube
