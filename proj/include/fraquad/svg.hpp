// fraquad — deterministic SVG rendering of a cell decomposition with
// optional per-vertex labels; all geometry stays rational until the final
// fixed-precision print, so identical inputs give byte-identical files.
// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "fraquad/address.hpp"
#include "fraquad/spec.hpp"

namespace fraquad {

/// Exact planar position of F_w(q_n) under the spec's embedding.
/// Throws when the spec has no embedding.
std::array<Rat, 2> embed_vertex(const FractalSpec& spec, const Word& w,
                                int n);

/// Render the cells of `table` as polygons (a segment when the boundary has
/// two points) plus one dot per labelled vertex, colored by value when the
/// label parses as a rational, with the label text alongside.  Labels must
/// name vertices of the table by canonical key.
std::string render_svg(
    const FractalSpec& spec, const VertexTable& table,
    const std::vector<std::pair<std::string, std::string>>& vertex_labels);

}  // namespace fraquad
