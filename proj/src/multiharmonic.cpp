// fraquad — level-1 Gram, inverse-Laplacian, and source-value tables.
// SPDX-License-Identifier: MIT
#include "fraquad/multiharmonic.hpp"

#include <stdexcept>
#include <string>

namespace fraquad {

namespace {

Mat<Rat> gram_matrix(const FractalSpec& spec, const ExtensionTable& ext) {
  const int N = spec.n_boundary;
  const int dim = N * N;
  Mat<Rat> avg(dim, dim);
  for (int i = 0; i < spec.n_maps; ++i)
    for (int k = 0; k < N; ++k)
      for (int kp = 0; kp < N; ++kp)
        for (int n = 0; n < N; ++n)
          for (int np = 0; np < N; ++np)
            avg.at(k * N + kp, n * N + np) +=
                spec.mu[i] * ext.A[i].at(n, k) * ext.A[i].at(np, kp);
  for (int d = 0; d < dim; ++d) avg.at(d, d) -= 1;
  auto basis = nullspace(avg);
  if (basis.size() != 1)
    throw std::runtime_error(
        "harmonic Gram matrix: averaging fixed point has dimension " +
        std::to_string(basis.size()) + ", expected 1");
  Rat s = 0;
  for (const Rat& x : basis[0]) s += x;
  if (is_zero(s))
    throw std::runtime_error("harmonic Gram matrix: fixed point has zero sum");
  Mat<Rat> I(N, N);
  for (int k = 0; k < N; ++k)
    for (int kp = 0; kp < N; ++kp) I.at(k, kp) = basis[0][k * N + kp] / s;
  return I;
}

}  // namespace

MultiharmonicTables build_multiharmonic(const FractalSpec& spec) {
  MultiharmonicTables t;
  t.ext = extension_matrices(spec);
  t.iota = harmonic_measure_integrals(spec, t.ext);
  t.I = gram_matrix(spec, t.ext);

  const int N = spec.n_boundary;
  CellGraph g = build_graph(spec, 1);
  t.table1 = g.table;
  const int nv = (int)t.table1.verts.size();
  t.pos.assign(nv, -1);
  std::vector<char> is_bnd(nv, 0);
  for (int k : t.table1.boundary_idx) is_bnd[k] = 1;
  for (int v = 0; v < nv; ++v)
    if (!is_bnd[v]) {
      t.pos[v] = (int)t.interior.size();
      t.interior.push_back(v);
    }
  const int ni = (int)t.interior.size();
  if (ni == 0)
    throw std::runtime_error("level-1 approximation has no interior vertices");

  t.X = Mat<Rat>(ni, ni);
  for (const auto& e : g.edges) {
    const int ends[2] = {e.u, e.v};
    for (int s = 0; s < 2; ++s) {
      int p = ends[s], x = ends[1 - s];
      if (t.pos[p] < 0) continue;
      t.X.at(t.pos[p], t.pos[p]) += e.cond;
      if (t.pos[x] >= 0) t.X.at(t.pos[p], t.pos[x]) -= e.cond;
    }
  }
  t.G = inverse(t.X);

  std::vector<Rat> mass = tent_masses(spec, t.table1, t.iota);
  t.b.assign(ni, Rat(0));
  for (int p = 0; p < ni; ++p) t.b[p] = mass[t.interior[p]];

  // bk(k, p) accumulates one term per representation (i, n) of vertex p.
  t.bk = Mat<Rat>(N, ni);
  for (int i = 0; i < spec.n_maps; ++i) {
    const auto& cell = t.table1.cells[i];
    for (int n = 0; n < N; ++n) {
      int p = t.pos[cell.corner[n]];
      if (p < 0) continue;
      for (int k = 0; k < N; ++k) {
        Rat s = 0;
        for (int kp = 0; kp < N; ++kp)
          s += t.ext.A[i].at(kp, k) * t.I.at(kp, n);
        t.bk.at(k, p) += spec.mu[i] * s;
      }
    }
  }

  t.g1 = mat_vec(t.G, t.b);
  t.f1 = Mat<Rat>(N, ni);
  for (int k = 0; k < N; ++k)
    for (int p = 0; p < ni; ++p) {
      Rat s = 0;
      for (int j = 0; j < ni; ++j) s += t.G.at(p, j) * t.bk.at(k, j);
      t.f1.at(k, p) = -s;
    }
  for (int p = 0; p < ni; ++p) {
    Rat s = 0;
    for (int k = 0; k < N; ++k) s += t.f1.at(k, p);
    if (-s != t.g1[p])
      throw std::runtime_error(
          "level-1 source values: the two constructions disagree");
  }

  t.T = 0;
  for (int p = 0; p < ni; ++p) t.T += t.g1[p] * t.b[p];
  t.rho = 0;
  for (int i = 0; i < spec.n_maps; ++i)
    t.rho += spec.mu[i] * spec.mu[i] * spec.r[i];
  t.Ig = t.T / (1 - t.rho);

  t.g1_cell.assign(spec.n_maps, std::vector<Rat>(N, Rat(0)));
  t.f1_cell.assign(N, std::vector<std::vector<Rat>>(
                          spec.n_maps, std::vector<Rat>(N, Rat(0))));
  for (int i = 0; i < spec.n_maps; ++i) {
    const auto& cell = t.table1.cells[i];
    for (int n = 0; n < N; ++n) {
      int p = t.pos[cell.corner[n]];
      if (p < 0) continue;
      t.g1_cell[i][n] = t.g1[p];
      for (int k = 0; k < N; ++k) t.f1_cell[k][i][n] = t.f1.at(k, p);
    }
  }
  return t;
}

Mat<double> gram_refinement_estimate(const FractalSpec& spec,
                                     const ExtensionTable& ext,
                                     const std::vector<Rat>& iota, int depth) {
  const int N = spec.n_boundary;
  std::vector<Mat<double>> A;
  A.reserve(spec.n_maps);
  for (int i = 0; i < spec.n_maps; ++i) {
    Mat<double> Ai(N, N);
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < N; ++k) Ai.at(n, k) = rat_double(ext.A[i].at(n, k));
    A.push_back(std::move(Ai));
  }
  std::vector<double> iot(N), mu(spec.n_maps);
  for (int n = 0; n < N; ++n) iot[n] = rat_double(iota[n]);
  for (int i = 0; i < spec.n_maps; ++i) mu[i] = rat_double(spec.mu[i]);

  // M_0 = diag(iota); M_d = sum_i mu_i A_i^T M_{d-1} A_i.  M_d is the
  // depth-d spline quadrature of the products h_k h_k'.
  Mat<double> M(N, N);
  for (int n = 0; n < N; ++n) M.at(n, n) = iot[n];
  for (int d = 0; d < depth; ++d) {
    Mat<double> next(N, N);
    for (int i = 0; i < spec.n_maps; ++i) {
      Mat<double> Ait(N, N);
      for (int n = 0; n < N; ++n)
        for (int k = 0; k < N; ++k) Ait.at(k, n) = A[i].at(n, k);
      Mat<double> term = mat_mul(Ait, mat_mul(M, A[i]));
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) next.at(a, b) += mu[i] * term.at(a, b);
    }
    M = next;
  }
  return M;
}

}  // namespace fraquad
