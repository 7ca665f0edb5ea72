// fraquad — canonical vertex addressing for V_m under the gluing relations,
// level-m vertex/cell tables, and the weighted cell graphs Gamma_m.
// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fraquad/linalg.hpp"
#include "fraquad/spec.hpp"

namespace fraquad {

/// Words are strings of map-index digits ('0'..'9'); "" is the empty word.
using Word = std::string;

Rat word_mu(const FractalSpec& spec, const Word& w);
Rat word_r(const FractalSpec& spec, const Word& w);

/// A point of V_* in canonical form: the lexicographically least
/// representation (shortest word first) of F_w q_n, plus every equivalent
/// representation at the canonical depth.
struct VertexId {
  Word word;
  int n = 0;
  std::vector<std::pair<Word, int>> reps;  // all representations, |w| = depth

  int depth() const { return (int)word.size(); }
  std::string key() const { return word + ":" + std::to_string(n); }
  bool operator==(const VertexId& o) const {
    return word == o.word && n == o.n;
  }
  bool operator<(const VertexId& o) const {
    if (word.size() != o.word.size()) return word.size() < o.word.size();
    if (word != o.word) return word < o.word;
    return n < o.n;
  }
};

/// Equivalence classes of level-1 addresses (i,n) under the declared
/// identifications and the fixed-point rule F_n q_n = q_n.
struct Level1Classes {
  // class id per (i,n), indexed i*n_boundary+n
  std::vector<int> cls;
  // members of each class, sorted
  std::vector<std::vector<Addr1>> members;
  // boundary index when the class is a boundary point q_k, else -1
  std::vector<int> boundary;
  // least interior member per class (valid when boundary < 0)
  std::vector<Addr1> least;

  int id(int i, int n, int n_boundary) const {
    return cls[(size_t)i * n_boundary + n];
  }
};

Level1Classes level1_classes(const FractalSpec& spec);

/// Canonical form of F_w q_n (idempotent, representation-order independent).
VertexId canonicalize(const FractalSpec& spec, const Word& w, int n);

/// Parse/print the "w:n" address syntax (":0" is the boundary point q_0).
std::string vertex_key(const Word& w, int n);
bool parse_vertex_key(const std::string& s, Word& w, int& n);

/// The vertex and cell tables of the level-m approximation.
struct VertexTable {
  int depth = 0;
  struct Vertex {
    Word word;  // canonical
    int n = 0;
    std::vector<std::pair<Word, int>> reps;  // at this vertex's own depth
    std::string key;
  };
  struct Cell {
    Word word;
    std::vector<int> corner;  // corner[n] = vertex index of F_w q_n
  };
  std::vector<Vertex> verts;
  std::vector<Cell> cells;
  std::vector<int> eta;           // number of depth-m cells containing vertex
  std::vector<int> boundary_idx;  // indices of q_0..q_{N0-1}
  std::unordered_map<std::string, int> index;  // canonical key -> vertex index

  int find(const std::string& canonical_key) const {
    auto it = index.find(canonical_key);
    return it == index.end() ? -1 : it->second;
  }
};

/// Enumerate V_m with canonical names; cells in lexicographic word order.
/// Satisfies V_{m-1} subset V_m (as canonical keys).
VertexTable enumerate_vertices(const FractalSpec& spec, int m);

/// All representations (u, n) of a vertex with |u| = depth (depth must be
/// at least the canonical depth of v).
std::vector<std::pair<Word, int>> reps_at_depth(const FractalSpec& spec,
                                                const VertexId& v, int depth);

/// A finite set of lattice points in canonical form, sorted, with the
/// enclosing depth (the maximum canonical depth over the points).
struct SampleSet {
  std::vector<VertexId> points;
  int enclosing_depth = 0;

  bool contains_boundary(const FractalSpec& spec) const;
};

/// Canonicalize, sort, and check a raw list of addresses.  Duplicates after
/// canonicalization are an error unless `dedupe` is set.
SampleSet make_sample_set(const FractalSpec& spec,
                          const std::vector<std::pair<Word, int>>& raw,
                          bool dedupe = false);

/// The union of F_w(base) over the given cell words.
SampleSet scaled_union(const FractalSpec& spec, const std::vector<Word>& cells,
                       const SampleSet& base);

/// F_w^{-1} x when x lies in the cell F_w(K); empty otherwise.
std::optional<VertexId> restrict_to_cell(const FractalSpec& spec,
                                         const VertexId& x, const Word& w);

/// Do the words cover the whole space with disjoint cell interiors?
bool is_cell_partition(const FractalSpec& spec, std::vector<Word> words);

/// Weighted graph on V_m: per-cell edges with conductance c_jk / r_w.
struct CellGraph {
  VertexTable table;
  struct Edge {
    int u, v;
    Rat cond;
  };
  std::vector<Edge> edges;  // one per (cell, boundary pair), not aggregated
};

CellGraph build_graph(const FractalSpec& spec, int m);

/// Graph Laplacian rows as adjacency: L(u,u) = sum c, L(u,v) = -c.
Mat<Rat> graph_laplacian(const CellGraph& g);

}  // namespace fraquad
