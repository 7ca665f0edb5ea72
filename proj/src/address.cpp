// fraquad — canonical addresses, V_m enumeration, cell graphs.
// SPDX-License-Identifier: MIT
#include "fraquad/address.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace fraquad {

Rat word_mu(const FractalSpec& spec, const Word& w) {
  Rat v(1);
  for (char ch : w) v *= spec.mu.at(ch - '0');
  return v;
}

Rat word_r(const FractalSpec& spec, const Word& w) {
  Rat v(1);
  for (char ch : w) v *= spec.r.at(ch - '0');
  return v;
}

std::string vertex_key(const Word& w, int n) {
  return w + ":" + std::to_string(n);
}

bool parse_vertex_key(const std::string& s, Word& w, int& n) {
  auto pos = s.find(':');
  if (pos == std::string::npos) return false;
  w = s.substr(0, pos);
  for (char ch : w)
    if (ch < '0' || ch > '9') return false;
  try {
    n = std::stoi(s.substr(pos + 1));
  } catch (...) {
    return false;
  }
  return true;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Level1Classes level1_classes(const FractalSpec& spec) {
  const int N = spec.n_maps, N0 = spec.n_boundary;
  UnionFind uf(N * N0);
  auto idx = [N0](int i, int n) { return i * N0 + n; };
  for (const auto& [x, y] : spec.identifications)
    uf.unite(idx(x.i, x.n), idx(y.i, y.n));

  std::map<int, int> root_to_cls;
  Level1Classes out;
  out.cls.assign(N * N0, -1);
  for (int i = 0; i < N; ++i)
    for (int n = 0; n < N0; ++n) {
      int root = uf.find(idx(i, n));
      auto it = root_to_cls.find(root);
      int c;
      if (it == root_to_cls.end()) {
        c = (int)out.members.size();
        root_to_cls[root] = c;
        out.members.emplace_back();
        out.boundary.push_back(-1);
        out.least.push_back(Addr1{i, n});
      } else {
        c = it->second;
      }
      out.cls[idx(i, n)] = c;
      out.members[c].push_back(Addr1{i, n});
      if (i == n && n < N0) {
        if (out.boundary[c] >= 0 && out.boundary[c] != n)
          throw std::runtime_error(
              "identifications glue two distinct boundary points");
        out.boundary[c] = n;
      }
    }
  for (size_t c = 0; c < out.members.size(); ++c) {
    std::sort(out.members[c].begin(), out.members[c].end());
    out.least[c] = out.members[c].front();
  }
  return out;
}

VertexId canonicalize(const FractalSpec& spec, const Word& w, int n) {
  const int N0 = spec.n_boundary;
  for (char ch : w)
    if (ch < '0' || ch - '0' >= spec.n_maps)
      throw std::runtime_error("canonicalize: map index out of range in word");
  if (n < 0 || n >= N0)
    throw std::runtime_error("canonicalize: boundary index out of range");

  Level1Classes l1 = level1_classes(spec);
  using Rep = std::pair<Word, int>;
  std::set<Rep> seen;
  std::queue<Rep> todo;
  seen.insert({w, n});
  todo.push({w, n});
  while (!todo.empty()) {
    auto [v, m] = todo.front();
    todo.pop();
    if (v.empty()) continue;
    Word prefix = v.substr(0, v.size() - 1);
    int i = v.back() - '0';
    int cls = l1.id(i, m, N0);
    for (const Addr1& mem : l1.members[cls]) {
      Rep r{prefix + char('0' + mem.i), mem.n};
      if (seen.insert(r).second) todo.push(r);
    }
    if (l1.boundary[cls] >= 0) {
      Rep r{prefix, l1.boundary[cls]};
      if (seen.insert(r).second) todo.push(r);
    }
  }
  // canonical = least by (length, word, n); reps = all at that least length
  VertexId id;
  size_t best_len = SIZE_MAX;
  for (const auto& r : seen) best_len = std::min(best_len, r.first.size());
  for (const auto& r : seen)
    if (r.first.size() == best_len) id.reps.push_back(r);
  std::sort(id.reps.begin(), id.reps.end());
  id.word = id.reps.front().first;
  id.n = id.reps.front().second;
  return id;
}

VertexTable enumerate_vertices(const FractalSpec& spec, int m) {
  if (m < 0) throw std::runtime_error("enumerate_vertices: m must be >= 0");
  const int N0 = spec.n_boundary, N = spec.n_maps;
  Level1Classes l1 = level1_classes(spec);

  VertexTable t;
  t.depth = 0;
  for (int k = 0; k < N0; ++k) {
    VertexTable::Vertex v;
    v.word = "";
    v.n = k;
    v.reps = {{"", k}};
    v.key = vertex_key("", k);
    t.index[v.key] = (int)t.verts.size();
    t.boundary_idx.push_back((int)t.verts.size());
    t.verts.push_back(std::move(v));
  }
  VertexTable::Cell root;
  root.word = "";
  for (int k = 0; k < N0; ++k) root.corner.push_back(k);
  t.cells.push_back(root);

  for (int d = 0; d < m; ++d) {
    std::vector<VertexTable::Cell> new_cells;
    new_cells.reserve(t.cells.size() * N);
    for (const auto& cell : t.cells) {
      // class id -> vertex index of the new interior points of this cell
      std::vector<int> cls_vertex(l1.members.size(), -1);
      for (int i = 0; i < N; ++i) {
        VertexTable::Cell child;
        child.word = cell.word + char('0' + i);
        child.corner.resize(N0);
        for (int n = 0; n < N0; ++n) {
          int cls = l1.id(i, n, N0);
          if (l1.boundary[cls] >= 0) {
            child.corner[n] = cell.corner[l1.boundary[cls]];
          } else {
            if (cls_vertex[cls] < 0) {
              VertexTable::Vertex v;
              v.word = cell.word + char('0' + l1.least[cls].i);
              v.n = l1.least[cls].n;
              for (const Addr1& mem : l1.members[cls])
                v.reps.push_back({cell.word + char('0' + mem.i), mem.n});
              v.key = vertex_key(v.word, v.n);
              cls_vertex[cls] = (int)t.verts.size();
              t.index[v.key] = (int)t.verts.size();
              t.verts.push_back(std::move(v));
            }
            child.corner[n] = cls_vertex[cls];
          }
        }
        new_cells.push_back(std::move(child));
      }
    }
    t.cells = std::move(new_cells);
    t.depth = d + 1;
  }

  t.eta.assign(t.verts.size(), 0);
  for (const auto& cell : t.cells) {
    std::set<int> uniq(cell.corner.begin(), cell.corner.end());
    for (int v : uniq) ++t.eta[v];
  }
  return t;
}

std::vector<std::pair<Word, int>> reps_at_depth(const FractalSpec& spec,
                                                const VertexId& v, int depth) {
  if (depth < v.depth())
    throw std::runtime_error(
        "reps_at_depth: requested depth is below the vertex depth");
  Level1Classes l1 = level1_classes(spec);
  // Members of the class of each boundary point: all (j, m) with F_j q_m =
  // q_n.  Padding a representation one level appends any of them.
  std::vector<std::vector<Addr1>> pad(spec.n_boundary);
  for (size_t cid = 0; cid < l1.members.size(); ++cid)
    if (l1.boundary[cid] >= 0) pad[l1.boundary[cid]] = l1.members[cid];
  std::vector<std::pair<Word, int>> reps = v.reps;
  if (reps.empty()) reps.push_back({v.word, v.n});
  for (int d = v.depth(); d < depth; ++d) {
    std::set<std::pair<Word, int>> next;
    for (const auto& [u, n] : reps)
      for (const Addr1& a : pad[n]) next.insert({u + char('0' + a.i), a.n});
    reps.assign(next.begin(), next.end());
  }
  return reps;
}

bool SampleSet::contains_boundary(const FractalSpec& spec) const {
  std::vector<char> seen(spec.n_boundary, 0);
  for (const VertexId& p : points)
    if (p.depth() == 0) seen[p.n] = 1;
  for (char s : seen)
    if (!s) return false;
  return true;
}

SampleSet make_sample_set(const FractalSpec& spec,
                          const std::vector<std::pair<Word, int>>& raw,
                          bool dedupe) {
  SampleSet out;
  out.points.reserve(raw.size());
  for (const auto& [w, n] : raw) out.points.push_back(canonicalize(spec, w, n));
  std::sort(out.points.begin(), out.points.end());
  auto dup = std::adjacent_find(out.points.begin(), out.points.end());
  if (dup != out.points.end()) {
    if (!dedupe)
      throw std::runtime_error(
          "sample set has duplicate points after canonicalization: " +
          dup->key());
    out.points.erase(std::unique(out.points.begin(), out.points.end()),
                     out.points.end());
  }
  for (const VertexId& p : out.points)
    out.enclosing_depth = std::max(out.enclosing_depth, p.depth());
  return out;
}

SampleSet scaled_union(const FractalSpec& spec, const std::vector<Word>& cells,
                       const SampleSet& base) {
  std::vector<std::pair<Word, int>> raw;
  raw.reserve(cells.size() * base.points.size());
  for (const Word& w : cells)
    for (const VertexId& p : base.points) raw.push_back({w + p.word, p.n});
  return make_sample_set(spec, raw, /*dedupe=*/true);
}

std::optional<VertexId> restrict_to_cell(const FractalSpec& spec,
                                         const VertexId& x, const Word& w) {
  int depth = std::max<int>((int)w.size(), x.depth());
  for (const auto& [u, n] : reps_at_depth(spec, x, depth))
    if (u.compare(0, w.size(), w) == 0)
      return canonicalize(spec, u.substr(w.size()), n);
  return std::nullopt;
}

namespace {

// words[lo, hi) sorted, sharing a common prefix of length `pos`; true when
// they subdivide the corresponding cell exactly.
bool partition_rec(const FractalSpec& spec, const std::vector<Word>& words,
                   size_t lo, size_t hi, size_t pos) {
  if (hi - lo == 1 && words[lo].size() == pos) return true;
  size_t at = lo;
  for (int i = 0; i < spec.n_maps; ++i) {
    size_t start = at;
    char digit = char('0' + i);
    while (at < hi && words[at].size() > pos && words[at][pos] == digit) ++at;
    if (start == at) return false;  // child cell uncovered
    if (!partition_rec(spec, words, start, at, pos + 1)) return false;
  }
  return at == hi;  // a word shorter than pos+1 would overlap its siblings
}

}  // namespace

bool is_cell_partition(const FractalSpec& spec, std::vector<Word> words) {
  if (words.empty()) return false;
  for (const Word& w : words)
    for (char ch : w)
      if (ch < '0' || ch - '0' >= spec.n_maps) return false;
  std::sort(words.begin(), words.end());
  if (std::adjacent_find(words.begin(), words.end()) != words.end())
    return false;
  return partition_rec(spec, words, 0, words.size(), 0);
}

CellGraph build_graph(const FractalSpec& spec, int m) {
  CellGraph g;
  g.table = enumerate_vertices(spec, m);
  const int N0 = spec.n_boundary;
  for (const auto& cell : g.table.cells) {
    Rat rw_inv = 1 / word_r(spec, cell.word);
    for (int j = 0; j < N0; ++j)
      for (int k = j + 1; k < N0; ++k)
        if (sgn(spec.c[j][k]) > 0)
          g.edges.push_back(
              {cell.corner[j], cell.corner[k], spec.c[j][k] * rw_inv});
  }
  return g;
}

Mat<Rat> graph_laplacian(const CellGraph& g) {
  int n = (int)g.table.verts.size();
  Mat<Rat> L(n, n);
  for (const auto& e : g.edges) {
    L.at(e.u, e.u) += e.cond;
    L.at(e.v, e.v) += e.cond;
    L.at(e.u, e.v) -= e.cond;
    L.at(e.v, e.u) -= e.cond;
  }
  return L;
}

}  // namespace fraquad
