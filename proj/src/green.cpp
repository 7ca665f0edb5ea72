// fraquad — Green-type functions, discrepancies, and composition rules.
// SPDX-License-Identifier: MIT
#include "fraquad/green.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "fraquad/harmonic.hpp"

namespace fraquad {

GreenTable g_v0_values(const FractalSpec& spec, const MultiharmonicTables& mt,
                       int depth) {
  GreenTable out;
  out.table = enumerate_vertices(spec, 0);
  out.values.assign(spec.n_boundary, Rat(0));
  for (int d = 1; d <= depth; ++d) {
    VertexTable fine = enumerate_vertices(spec, d);
    out.values = refine_values(spec, mt.ext, out.table, fine, out.values,
                               &mt.g1_cell);
    out.table = std::move(fine);
  }
  return out;
}

GreenTableF g_v0_values_float(const FractalSpec& spec,
                              const MultiharmonicTables& mt, int depth) {
  const int N = spec.n_boundary;
  std::vector<Mat<double>> A;
  for (int i = 0; i < spec.n_maps; ++i) {
    Mat<double> Ai(N, N);
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < N; ++k)
        Ai.at(n, k) = rat_double(mt.ext.A[i].at(n, k));
    A.push_back(std::move(Ai));
  }
  std::vector<std::vector<double>> g1c(spec.n_maps, std::vector<double>(N));
  std::vector<double> mur(spec.n_maps);
  for (int i = 0; i < spec.n_maps; ++i) {
    mur[i] = rat_double(spec.mu[i] * spec.r[i]);
    for (int n = 0; n < N; ++n) g1c[i][n] = rat_double(mt.g1_cell[i][n]);
  }
  GreenTableF out;
  out.table = enumerate_vertices(spec, 0);
  out.values.assign(N, 0.0);
  for (int d = 1; d <= depth; ++d) {
    VertexTable fine = enumerate_vertices(spec, d);
    std::vector<double> next(fine.verts.size(), 0.0);
    for (size_t v = 0; v < out.values.size(); ++v) next[v] = out.values[v];
    for (size_t cc = 0; cc < fine.cells.size(); ++cc) {
      const auto& child = fine.cells[cc];
      const auto& parent = out.table.cells[cc / spec.n_maps];
      const int i = child.word.back() - '0';
      double murw = 1.0;
      for (char ch : parent.word) murw *= mur[ch - '0'];
      for (int n = 0; n < N; ++n) {
        double val = murw * g1c[i][n];
        for (int l = 0; l < N; ++l)
          val += A[i].at(n, l) * out.values[parent.corner[l]];
        next[child.corner[n]] = val;
      }
    }
    out.values = std::move(next);
    out.table = std::move(fine);
  }
  return out;
}

GESpline g_E_values(const FractalSpec& spec, const MultiharmonicTables& mt,
                    const SampleSet& E, int depth) {
  if (E.points.empty())
    throw std::runtime_error("g_E_values: sample set is empty");
  if (depth < std::max(E.enclosing_depth, 1))
    throw std::runtime_error(
        "g_E_values: depth is below the enclosing depth of the sample set");
  // Solve on the coarsest enclosing lattice; below the node scale g_E obeys
  // the same cellwise recursion as the boundary function itself (harmonic
  // part plus mu_w r_w times the level-1 source), so deeper tabulation is a
  // refinement, not a solve.
  const int m_star = std::max(E.enclosing_depth, 1);
  GESpline out;
  CellGraph g = build_graph(spec, m_star);
  out.table = g.table;
  out.nodes.reserve(E.points.size());
  for (const VertexId& p : E.points) {
    int idx = out.table.find(p.key());
    if (idx < 0)
      throw std::runtime_error("g_E_values: sample point " + p.key() +
                               " is not on the lattice");
    out.nodes.push_back(idx);
  }
  out.boundary_in_set = E.contains_boundary(spec);

  GreenTable green = g_v0_values(spec, mt, m_star);
  out.g = green.values;
  std::vector<Rat> mass = tent_masses(spec, out.table, mt.iota);

  if (out.boundary_in_set) {
    std::vector<Rat> node_vals(out.nodes.size());
    for (size_t j = 0; j < out.nodes.size(); ++j)
      node_vals[j] = out.g[out.nodes[j]];
    out.s = solve_spline(out.table, g, out.nodes, node_vals, Rat(0), mass);
    out.gE.resize(out.g.size());
    for (size_t v = 0; v < out.g.size(); ++v) out.gE[v] = out.g[v] - out.s[v];
    out.delta0_sq = mt.Ig - integrate_spline(spec, out.table, mt.iota, out.s);
  } else {
    std::vector<Rat> zeros(out.nodes.size(), Rat(0));
    out.gE = solve_spline(out.table, g, out.nodes, zeros, Rat(1), mass);
    out.s.resize(out.g.size());
    for (size_t v = 0; v < out.g.size(); ++v) out.s[v] = out.g[v] - out.gE[v];
    out.delta0_sq = integrate_spline(spec, out.table, mt.iota, out.gE) +
                    rat_pow(mt.rho, m_star) * mt.Ig;
  }

  // Vertex indices of the coarse lattice are a stable prefix of the finer
  // tables, so the node list survives refinement.
  for (int d = m_star + 1; d <= depth; ++d) {
    VertexTable fine = enumerate_vertices(spec, d);
    out.g = refine_values(spec, mt.ext, out.table, fine, out.g, &mt.g1_cell);
    out.gE = refine_values(spec, mt.ext, out.table, fine, out.gE, &mt.g1_cell);
    out.table = std::move(fine);
  }
  if (out.table.depth != m_star) {
    out.s.resize(out.g.size());
    for (size_t v = 0; v < out.g.size(); ++v) out.s[v] = out.g[v] - out.gE[v];
  }

  for (int idx : out.nodes)
    if (!is_zero(out.gE[idx]))
      throw std::runtime_error("g_E_values: g_E does not vanish on E");
  for (const Rat& v : out.gE)
    if (v < 0)
      throw std::runtime_error("g_E_values: g_E is negative on the lattice");
  return out;
}

namespace {

struct BnbNode {
  Rat ub;
  Rat murw;
  std::vector<Rat> corners;

  bool operator<(const BnbNode& o) const { return ub < o.ub; }
};

}  // namespace

Delta1Result delta1_bounds(const FractalSpec& spec,
                           const MultiharmonicTables& mt, const GESpline& ge,
                           const Rat& tol, long long node_cap) {
  const int N = spec.n_boundary;
  Rat qmax = 0;
  for (int i = 0; i < spec.n_maps; ++i)
    qmax = std::max(qmax, Rat(spec.mu[i] * spec.r[i]));
  Rat g1max = 0;
  for (const Rat& v : mt.g1) g1max = std::max(g1max, v);
  const Rat U = g1max / (1 - qmax);  // global bound on the boundary function

  Delta1Result res;
  res.lower = 0;
  for (const Rat& v : ge.gE) res.lower = std::max(res.lower, v);

  std::priority_queue<BnbNode> queue;
  for (const auto& cell : ge.table.cells) {
    BnbNode node;
    node.murw = word_mu(spec, cell.word) * word_r(spec, cell.word);
    node.corners.resize(N);
    Rat cmax = 0;
    for (int n = 0; n < N; ++n) {
      node.corners[n] = ge.gE[cell.corner[n]];
      cmax = std::max(cmax, node.corners[n]);
    }
    node.ub = cmax + node.murw * U;
    queue.push(std::move(node));
  }

  while (!queue.empty()) {
    if (queue.top().ub <= res.lower + tol) break;
    if (res.nodes >= node_cap) break;
    BnbNode cur = queue.top();
    queue.pop();
    ++res.nodes;
    for (int i = 0; i < spec.n_maps; ++i) {
      BnbNode child;
      child.murw = cur.murw * spec.mu[i] * spec.r[i];
      child.corners.resize(N);
      Rat cmax = 0;
      for (int n = 0; n < N; ++n) {
        Rat v = cur.murw * mt.g1_cell[i][n];
        for (int l = 0; l < N; ++l)
          v += mt.ext.A[i].at(n, l) * cur.corners[l];
        child.corners[n] = v;
        cmax = std::max(cmax, v);
      }
      res.lower = std::max(res.lower, cmax);
      child.ub = cmax + child.murw * U;
      queue.push(std::move(child));
    }
  }
  res.upper = queue.empty() ? res.lower : std::max(res.lower, queue.top().ub);
  res.certified = res.upper - res.lower <= tol;
  return res;
}

std::vector<CellSet> restrict_sample_set(const FractalSpec& spec,
                                         const SampleSet& E,
                                         const std::vector<Word>& partition) {
  if (!is_cell_partition(spec, partition))
    throw std::runtime_error(
        "restrict_sample_set: cell words do not form a partition");
  std::vector<CellSet> out;
  out.reserve(partition.size());
  for (const Word& w : partition) {
    std::vector<std::pair<Word, int>> raw;
    for (const VertexId& x : E.points)
      if (auto local = restrict_to_cell(spec, x, w))
        raw.push_back({local->word, local->n});
    CellSet cs{w, make_sample_set(spec, raw, /*dedupe=*/true)};
    if (!cs.set.contains_boundary(spec))
      throw std::runtime_error(
          "restrict_sample_set: the sample set misses a corner of cell '" +
          (w.empty() ? std::string(":root:") : w) + "'");
    out.push_back(std::move(cs));
  }
  return out;
}

Rat compose_delta0_sq(
    const FractalSpec& spec,
    const std::vector<std::pair<Word, Rat>>& cell_delta0_sq) {
  Rat s = 0;
  for (const auto& [w, d0] : cell_delta0_sq) {
    Rat muw = word_mu(spec, w);
    s += muw * muw * word_r(spec, w) * d0;
  }
  return s;
}

std::pair<Rat, Rat> compose_delta1(
    const FractalSpec& spec,
    const std::vector<std::tuple<Word, Rat, Rat>>& cell_delta1) {
  Rat lo = 0, hi = 0;
  for (const auto& [w, l, u] : cell_delta1) {
    Rat f = word_mu(spec, w) * word_r(spec, w);
    lo = std::max(lo, Rat(f * l));
    hi = std::max(hi, Rat(f * u));
  }
  return {lo, hi};
}

}  // namespace fraquad
