// fraquad — SVG emission for cell decompositions and vertex data.
// SPDX-License-Identifier: MIT
#include "fraquad/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fraquad/rational.hpp"

namespace fraquad {

namespace {

constexpr int kCanvasWidth = 640;
constexpr int kMargin = 20;

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

/// Fixed-precision coordinate print (enough for sub-pixel placement).
std::string coord(const Rat& x) { return decimal_str(x, 8); }

/// Two-stop color ramp, low = blue, high = warm red.
std::string ramp_color(double t) {
  t = std::min(1.0, std::max(0.0, t));
  const int lo[3] = {44, 95, 158}, hi[3] = {210, 59, 47};
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                (int)(lo[0] + t * (hi[0] - lo[0]) + 0.5),
                (int)(lo[1] + t * (hi[1] - lo[1]) + 0.5),
                (int)(lo[2] + t * (hi[2] - lo[2]) + 0.5));
  return buf;
}

}  // namespace

std::array<Rat, 2> embed_vertex(const FractalSpec& spec, const Word& w,
                                int n) {
  if (!spec.embedding)
    throw std::runtime_error("spec \"" + spec.name +
                             "\" has no planar embedding");
  const Embedding& e = *spec.embedding;
  if (n < 0 || n >= (int)e.q.size())
    throw std::runtime_error("embed_vertex: boundary index out of range");
  std::array<Rat, 2> p = e.q[n];
  // F_w = F_{w1} o ... o F_{wk}: apply the innermost map first.
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const AffineMap& m = e.maps.at(*it - '0');
    Rat x = m.A[0][0] * p[0] + m.A[0][1] * p[1] + m.t[0];
    Rat y = m.A[1][0] * p[0] + m.A[1][1] * p[1] + m.t[1];
    p = {x, y};
  }
  return p;
}

std::string render_svg(
    const FractalSpec& spec, const VertexTable& table,
    const std::vector<std::pair<std::string, std::string>>& vertex_labels) {
  std::vector<std::array<Rat, 2>> pos(table.verts.size());
  for (size_t v = 0; v < table.verts.size(); ++v)
    pos[v] = embed_vertex(spec, table.verts[v].word, table.verts[v].n);

  std::map<std::string, std::string> label_of(vertex_labels.begin(),
                                              vertex_labels.end());
  for (const auto& [key, text] : vertex_labels)
    if (table.find(key) < 0)
      throw std::runtime_error("label for a vertex that is not on the "
                               "lattice: " + key);

  // Exact bounding box, padded by 5% of the larger extent.
  Rat x0 = pos[0][0], x1 = pos[0][0], y0 = pos[0][1], y1 = pos[0][1];
  for (const auto& p : pos) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  Rat extent = std::max(Rat(x1 - x0), Rat(y1 - y0));
  if (is_zero(extent)) extent = 1;  // single point: arbitrary unit window
  const Rat pad = extent / 20;
  x0 -= pad;
  x1 += pad;
  y0 -= pad;
  y1 += pad;
  if (x1 == x0) x1 = x0 + extent;  // degenerate axis (vertical segment)
  if (y1 == y0) y1 = y0 + extent / 8;

  const Rat scale = Rat(kCanvasWidth - 2 * kMargin) / (x1 - x0);
  const Rat height = 2 * kMargin + Rat(y1 - y0) * scale;
  auto px = [&](const Rat& x) { return coord(kMargin + (x - x0) * scale); };
  // SVG's y axis points down; flip so the embedding reads naturally.
  auto py = [&](const Rat& y) { return coord(kMargin + (y1 - y) * scale); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvasWidth
      << "\" height=\"" << coord(height) << "\" viewBox=\"0 0 "
      << kCanvasWidth << " " << coord(height) << "\">\n"
      << "  <title>" << xml_escape(spec.name) << " depth " << table.depth
      << "</title>\n";

  for (const auto& cell : table.cells) {
    if (spec.n_boundary == 2) {
      const auto &a = pos[cell.corner[0]], &b = pos[cell.corner[1]];
      out << "  <line x1=\"" << px(a[0]) << "\" y1=\"" << py(a[1])
          << "\" x2=\"" << px(b[0]) << "\" y2=\"" << py(b[1])
          << "\" stroke=\"#555555\" stroke-width=\"2\"/>\n";
      continue;
    }
    out << "  <polygon points=\"";
    for (int m = 0; m < spec.n_boundary; ++m) {
      const auto& p = pos[cell.corner[m]];
      out << (m ? " " : "") << px(p[0]) << "," << py(p[1]);
    }
    out << "\" fill=\"#f5f3ee\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
  }

  // Color scale over the labels that parse as rationals.
  std::map<std::string, Rat> numeric;
  Rat vmin, vmax;
  bool have_range = false;
  for (const auto& [key, text] : vertex_labels) {
    try {
      Rat v = rat_parse(text);
      numeric.emplace(key, v);
      vmin = have_range ? std::min(vmin, v) : v;
      vmax = have_range ? std::max(vmax, v) : v;
      have_range = true;
    } catch (const std::exception&) {
      // non-numeric label: plain dot
    }
  }

  for (size_t v = 0; v < table.verts.size(); ++v) {
    auto it = label_of.find(table.verts[v].key);
    if (it == label_of.end()) continue;
    std::string fill = "#111111";
    auto num = numeric.find(it->first);
    if (num != numeric.end() && have_range) {
      double t = vmax == vmin
                     ? 0.5
                     : rat_double(Rat(num->second - vmin) / (vmax - vmin));
      fill = ramp_color(t);
    }
    const auto& p = pos[v];
    out << "  <circle cx=\"" << px(p[0]) << "\" cy=\"" << py(p[1])
        << "\" r=\"3.5\" fill=\"" << fill << "\"/>\n"
        << "  <text x=\"" << coord(kMargin + (p[0] - x0) * scale + 5)
        << "\" y=\"" << coord(kMargin + (y1 - p[1]) * scale - 5)
        << "\" font-family=\"monospace\" font-size=\"11\" "
           "fill=\"#111111\">"
        << xml_escape(it->second) << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace fraquad
