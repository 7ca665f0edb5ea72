// fraquad — harmonic extension, energy forms, piecewise-harmonic splines,
// self-similar measure integrals, and graph-based estimators.
// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "fraquad/address.hpp"
#include "fraquad/linalg.hpp"
#include "fraquad/spec.hpp"

namespace fraquad {

/// Values of the boundary-cardinal harmonic functions on the level-1 cell
/// corners: A[i].at(n, k) = h_k(F_i q_n), where h_k is harmonic with
/// h_k(q_j) = [j == k].  Row n of A[i] maps boundary values to the value at
/// F_i q_n, so refining a harmonic function cellwise is v' = A[i] * v.
struct ExtensionTable {
  std::vector<Mat<Rat>> A;

  int n_boundary() const { return A.empty() ? 0 : A[0].rows; }
};

/// Solve the level-1 Dirichlet problem once (multi-RHS) and tabulate all
/// h_k(F_i q_n).
ExtensionTable extension_matrices(const FractalSpec& spec);

/// iota[n] = integral of h_n against the self-similar measure: the unique
/// fixed point (normalized to sum 1) of the measure-averaging operator
/// iota[n] = sum_i mu_i sum_k h_n(F_i q_k) iota[k].
std::vector<Rat> harmonic_measure_integrals(const FractalSpec& spec,
                                            const ExtensionTable& ext);

/// Graph energy forms on Gamma_m (conductances already carry 1/r_w).
Rat energy_bilinear(const CellGraph& g, const std::vector<Rat>& u,
                    const std::vector<Rat>& v);
Rat energy(const CellGraph& g, const std::vector<Rat>& u);

/// mass[p] = integral of the level-m tent function at vertex p:
/// sum over cells containing p of mu_w * iota[corner index].
std::vector<Rat> tent_masses(const FractalSpec& spec, const VertexTable& table,
                             const std::vector<Rat>& iota);

/// Integral of the piecewise-harmonic interpolant of `values` (given on all
/// of V_m) against the self-similar measure.
Rat integrate_spline(const FractalSpec& spec, const VertexTable& table,
                     const std::vector<Rat>& iota,
                     const std::vector<Rat>& values);

/// Solve the level-m node problem: u = node_values on `nodes`; at every
/// other vertex p (including boundary corners outside the node set, which
/// get the same natural condition) require
///   sum_edges c (u_p - u_x) = load_scale * tent_mass[p].
/// Load zero gives the piecewise-harmonic spline through the nodes.
std::vector<Rat> solve_spline(const VertexTable& table, const CellGraph& g,
                              const std::vector<int>& nodes,
                              const std::vector<Rat>& node_values,
                              const Rat& load_scale,
                              const std::vector<Rat>& tent_mass);

/// All cardinal splines of the node set in one factorization: column j of
/// the result (nverts x |nodes|) is the spline that is 1 at nodes[j] and 0
/// at the other nodes.
Mat<Rat> indicator_splines(const VertexTable& table, const CellGraph& g,
                           const std::vector<int>& nodes);

/// One refinement step for cellwise-harmonic data: given values on V_d
/// (`coarse`), produce values on V_{d+1} (`fine`; indices of V_d vertices
/// are stable between the two tables).  When `source` is non-null the child
/// corner F_w F_i q_n additionally receives mu_w r_w * (*source)[i][n] — the
/// inhomogeneous term of the Green-function recursion.
std::vector<Rat> refine_values(const FractalSpec& spec,
                               const ExtensionTable& ext,
                               const VertexTable& coarse,
                               const VertexTable& fine,
                               const std::vector<Rat>& values,
                               const std::vector<std::vector<Rat>>* source =
                                   nullptr);

/// Pointwise renormalized graph Laplacian estimate on V_m:
/// est[p] = (sum_edges c (f_x - f_p)) / tent_mass[p].  Entries at boundary
/// vertices are computed the same way; callers restrict as needed.
std::vector<Rat> graph_laplacian_estimate(const CellGraph& g,
                                          const std::vector<Rat>& tent_mass,
                                          const std::vector<Rat>& values);

/// Heuristic scale estimate: min over x0 in V_m of the max effective
/// resistance from x0 on Gamma_m (exact, via one grounded-Laplacian
/// inverse).
Rat estimate_resistance_radius(const FractalSpec& spec, int depth);

}  // namespace fraquad
