// fraquad — harmonic extension, splines, and measure integrals.
// SPDX-License-Identifier: MIT
#include "fraquad/harmonic.hpp"

#include <stdexcept>
#include <string>

namespace fraquad {

ExtensionTable extension_matrices(const FractalSpec& spec) {
  const int N = spec.n_boundary;
  CellGraph g = build_graph(spec, 1);
  const VertexTable& t = g.table;
  const int nv = (int)t.verts.size();

  // Dirichlet data: h_k = indicator of q_k on the boundary.
  std::vector<char> fixed(nv, 0);
  for (int k = 0; k < N; ++k) fixed[t.boundary_idx[k]] = 1;
  std::vector<int> pos(nv, -1);
  std::vector<int> free_verts;
  for (int v = 0; v < nv; ++v)
    if (!fixed[v]) {
      pos[v] = (int)free_verts.size();
      free_verts.push_back(v);
    }
  const int nf = (int)free_verts.size();

  Mat<Rat> A(nf, nf);
  Mat<Rat> rhs(nf, N);
  for (const auto& e : g.edges) {
    const int ends[2] = {e.u, e.v};
    for (int s = 0; s < 2; ++s) {
      int p = ends[s], x = ends[1 - s];
      if (pos[p] < 0) continue;
      A.at(pos[p], pos[p]) += e.cond;
      if (pos[x] >= 0) {
        A.at(pos[p], pos[x]) -= e.cond;
      } else {
        // x = q_k for some k; contributes to the h_k column only.
        for (int k = 0; k < N; ++k)
          if (t.boundary_idx[k] == x) rhs.at(pos[p], k) += e.cond;
      }
    }
  }
  Mat<Rat> sol = nf ? solve_dense(A, rhs) : Mat<Rat>(0, N);

  // Scatter to full vertex values, then read off the cell corners.
  Mat<Rat> vals(nv, N);
  for (int k = 0; k < N; ++k) vals.at(t.boundary_idx[k], k) = 1;
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < N; ++k) vals.at(free_verts[f], k) = sol.at(f, k);

  ExtensionTable ext;
  ext.A.reserve(spec.n_maps);
  for (int i = 0; i < spec.n_maps; ++i) {
    Mat<Rat> Ai(N, N);
    const auto& cell = t.cells[i];
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < N; ++k) Ai.at(n, k) = vals.at(cell.corner[n], k);
    ext.A.push_back(std::move(Ai));
  }
  return ext;
}

std::vector<Rat> harmonic_measure_integrals(const FractalSpec& spec,
                                            const ExtensionTable& ext) {
  const int N = spec.n_boundary;
  Mat<Rat> avg(N, N);  // avg(n, k) = sum_i mu_i h_n(F_i q_k)
  for (int i = 0; i < spec.n_maps; ++i)
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < N; ++k)
        avg.at(n, k) += spec.mu[i] * ext.A[i].at(k, n);
  Mat<Rat> sys = avg;
  for (int n = 0; n < N; ++n) sys.at(n, n) -= 1;
  auto basis = nullspace(sys);
  if (basis.size() != 1)
    throw std::runtime_error(
        "harmonic measure integrals: averaging fixed point has dimension " +
        std::to_string(basis.size()) + ", expected 1");
  std::vector<Rat> iota = basis[0];
  Rat s = 0;
  for (const Rat& x : iota) s += x;
  if (is_zero(s))
    throw std::runtime_error(
        "harmonic measure integrals: fixed point has zero sum");
  for (Rat& x : iota) x /= s;
  return iota;
}

Rat energy_bilinear(const CellGraph& g, const std::vector<Rat>& u,
                    const std::vector<Rat>& v) {
  Rat s = 0;
  for (const auto& e : g.edges)
    s += e.cond * (u[e.u] - u[e.v]) * (v[e.u] - v[e.v]);
  return s;
}

Rat energy(const CellGraph& g, const std::vector<Rat>& u) {
  return energy_bilinear(g, u, u);
}

std::vector<Rat> tent_masses(const FractalSpec& spec, const VertexTable& table,
                             const std::vector<Rat>& iota) {
  std::vector<Rat> mass(table.verts.size(), Rat(0));
  for (const auto& cell : table.cells) {
    Rat muw = word_mu(spec, cell.word);
    for (int n = 0; n < (int)cell.corner.size(); ++n)
      mass[cell.corner[n]] += muw * iota[n];
  }
  return mass;
}

Rat integrate_spline(const FractalSpec& spec, const VertexTable& table,
                     const std::vector<Rat>& iota,
                     const std::vector<Rat>& values) {
  Rat s = 0;
  for (const auto& cell : table.cells) {
    Rat muw = word_mu(spec, cell.word);
    for (int n = 0; n < (int)cell.corner.size(); ++n)
      s += muw * iota[n] * values[cell.corner[n]];
  }
  return s;
}

std::vector<Rat> solve_spline(const VertexTable& table, const CellGraph& g,
                              const std::vector<int>& nodes,
                              const std::vector<Rat>& node_values,
                              const Rat& load_scale,
                              const std::vector<Rat>& tent_mass) {
  const int nv = (int)table.verts.size();
  if (nodes.size() != node_values.size())
    throw std::runtime_error("solve_spline: node/value count mismatch");
  std::vector<char> fixed(nv, 0);
  std::vector<Rat> u(nv, Rat(0));
  for (size_t j = 0; j < nodes.size(); ++j) {
    if (nodes[j] < 0 || nodes[j] >= nv)
      throw std::runtime_error("solve_spline: node index out of range");
    if (fixed[nodes[j]])
      throw std::runtime_error("solve_spline: duplicate node");
    fixed[nodes[j]] = 1;
    u[nodes[j]] = node_values[j];
  }
  std::vector<int> pos(nv, -1);
  std::vector<int> free_verts;
  for (int v = 0; v < nv; ++v)
    if (!fixed[v]) {
      pos[v] = (int)free_verts.size();
      free_verts.push_back(v);
    }
  const int nf = (int)free_verts.size();
  if (nf == 0) return u;

  Mat<Rat> A(nf, nf);
  std::vector<Rat> rhs(nf, Rat(0));
  for (int f = 0; f < nf; ++f) rhs[f] = load_scale * tent_mass[free_verts[f]];
  for (const auto& e : g.edges) {
    const int ends[2] = {e.u, e.v};
    for (int s = 0; s < 2; ++s) {
      int p = ends[s], x = ends[1 - s];
      if (pos[p] < 0) continue;
      A.at(pos[p], pos[p]) += e.cond;
      if (pos[x] >= 0)
        A.at(pos[p], pos[x]) -= e.cond;
      else
        rhs[pos[p]] += e.cond * u[x];
    }
  }
  std::vector<Rat> sol = solve_dense(A, rhs);
  for (int f = 0; f < nf; ++f) u[free_verts[f]] = sol[f];
  return u;
}

Mat<Rat> indicator_splines(const VertexTable& table, const CellGraph& g,
                           const std::vector<int>& nodes) {
  const int nv = (int)table.verts.size();
  const int ne = (int)nodes.size();
  std::vector<int> which(nv, -1);  // vertex -> node column
  for (int j = 0; j < ne; ++j) {
    if (nodes[j] < 0 || nodes[j] >= nv)
      throw std::runtime_error("indicator_splines: node index out of range");
    if (which[nodes[j]] >= 0)
      throw std::runtime_error("indicator_splines: duplicate node");
    which[nodes[j]] = j;
  }
  std::vector<int> pos(nv, -1);
  std::vector<int> free_verts;
  for (int v = 0; v < nv; ++v)
    if (which[v] < 0) {
      pos[v] = (int)free_verts.size();
      free_verts.push_back(v);
    }
  const int nf = (int)free_verts.size();

  Mat<Rat> out(nv, ne);
  for (int j = 0; j < ne; ++j) out.at(nodes[j], j) = 1;
  if (nf == 0) return out;

  Mat<Rat> A(nf, nf);
  Mat<Rat> rhs(nf, ne);
  for (const auto& e : g.edges) {
    const int ends[2] = {e.u, e.v};
    for (int s = 0; s < 2; ++s) {
      int p = ends[s], x = ends[1 - s];
      if (pos[p] < 0) continue;
      A.at(pos[p], pos[p]) += e.cond;
      if (pos[x] >= 0)
        A.at(pos[p], pos[x]) -= e.cond;
      else
        rhs.at(pos[p], which[x]) += e.cond;
    }
  }
  Mat<Rat> sol = solve_dense(A, rhs);
  for (int f = 0; f < nf; ++f)
    for (int j = 0; j < ne; ++j) out.at(free_verts[f], j) = sol.at(f, j);
  return out;
}

std::vector<Rat> refine_values(const FractalSpec& spec,
                               const ExtensionTable& ext,
                               const VertexTable& coarse,
                               const VertexTable& fine,
                               const std::vector<Rat>& values,
                               const std::vector<std::vector<Rat>>* source) {
  if (fine.depth != coarse.depth + 1)
    throw std::runtime_error("refine_values: tables are not adjacent levels");
  if (values.size() != coarse.verts.size())
    throw std::runtime_error("refine_values: value count mismatch");
  const int N = spec.n_boundary;
  std::vector<Rat> out(fine.verts.size(), Rat(0));
  for (size_t v = 0; v < values.size(); ++v) out[v] = values[v];
  // Cells are in lexicographic word order, so the parent of fine cell cc is
  // coarse cell cc / n_maps and the map index is the last digit.
  for (size_t cc = 0; cc < fine.cells.size(); ++cc) {
    const auto& child = fine.cells[cc];
    const auto& parent = coarse.cells[cc / spec.n_maps];
    const int i = child.word.back() - '0';
    Rat murw;
    if (source) murw = word_mu(spec, parent.word) * word_r(spec, parent.word);
    for (int n = 0; n < N; ++n) {
      Rat v = 0;
      for (int l = 0; l < N; ++l)
        v += ext.A[i].at(n, l) * values[parent.corner[l]];
      if (source) v += murw * (*source)[i][n];
      out[child.corner[n]] = v;
    }
  }
  return out;
}

std::vector<Rat> graph_laplacian_estimate(const CellGraph& g,
                                          const std::vector<Rat>& tent_mass,
                                          const std::vector<Rat>& values) {
  std::vector<Rat> acc(values.size(), Rat(0));
  for (const auto& e : g.edges) {
    Rat d = values[e.v] - values[e.u];
    acc[e.u] += e.cond * d;
    acc[e.v] -= e.cond * d;
  }
  for (size_t v = 0; v < acc.size(); ++v) {
    if (is_zero(tent_mass[v]))
      throw std::runtime_error("graph_laplacian_estimate: zero tent mass");
    acc[v] /= tent_mass[v];
  }
  return acc;
}

Rat estimate_resistance_radius(const FractalSpec& spec, int depth) {
  CellGraph g = build_graph(spec, depth);
  const int nv = (int)g.table.verts.size();
  if (nv < 2)
    throw std::runtime_error("estimate_resistance_radius: graph too small");
  Mat<Rat> L(nv, nv);
  for (const auto& e : g.edges) {
    L.at(e.u, e.u) += e.cond;
    L.at(e.v, e.v) += e.cond;
    L.at(e.u, e.v) -= e.cond;
    L.at(e.v, e.u) -= e.cond;
  }
  // Ground vertex 0 and invert; R(a,b) = K_aa + K_bb - 2 K_ab.
  Mat<Rat> Lg(nv - 1, nv - 1);
  for (int a = 1; a < nv; ++a)
    for (int b = 1; b < nv; ++b) Lg.at(a - 1, b - 1) = L.at(a, b);
  Mat<Rat> K = inverse(Lg);
  auto kat = [&](int a, int b) -> Rat {
    if (a == 0 || b == 0) return Rat(0);
    return K.at(a - 1, b - 1);
  };
  Rat best;
  bool have = false;
  for (int x0 = 0; x0 < nv; ++x0) {
    Rat worst;
    bool w0 = false;
    for (int x = 0; x < nv; ++x) {
      if (x == x0) continue;
      Rat r = kat(x0, x0) + kat(x, x) - 2 * kat(x0, x);
      if (!w0 || r > worst) {
        worst = r;
        w0 = true;
      }
    }
    if (!have || worst < best) {
      best = worst;
      have = true;
    }
  }
  return best;
}

}  // namespace fraquad
