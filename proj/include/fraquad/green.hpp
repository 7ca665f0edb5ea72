// fraquad — the boundary Green-type function, its restriction-to-a-sample-set
// variants, quadrature discrepancies of both orders, and the self-similar
// composition rules.
// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "fraquad/address.hpp"
#include "fraquad/multiharmonic.hpp"
#include "fraquad/spec.hpp"

namespace fraquad {

/// Exact values of the Green-type function vanishing on the boundary set
/// (unit load) on the level-`depth` lattice, via the two-scale recursion.
struct GreenTable {
  VertexTable table;
  std::vector<Rat> values;
};

GreenTable g_v0_values(const FractalSpec& spec, const MultiharmonicTables& mt,
                       int depth);

/// Floating-point variant of the same recursion for deep lattices.
struct GreenTableF {
  VertexTable table;
  std::vector<double> values;
};

GreenTableF g_v0_values_float(const FractalSpec& spec,
                              const MultiharmonicTables& mt, int depth);

/// The Green-type function vanishing on a sample set E, tabulated on an
/// enclosing lattice, together with the first-order discrepancy:
/// delta0(E)^2 = integral of g_E.
struct GESpline {
  VertexTable table;        // lattice at the requested depth
  std::vector<int> nodes;   // indices of E in the lattice
  std::vector<Rat> g;       // the boundary Green-type function
  std::vector<Rat> s;       // the E-spline it splits across
  std::vector<Rat> gE;      // g_E = g - s when E contains the boundary
  Rat delta0_sq;            // exact
  bool boundary_in_set = false;
};

/// depth must be at least max(enclosing depth of E, 1).  When E contains
/// the boundary set, g_E = g - s and delta0^2 = Ig - integral(s); otherwise
/// g_E is the loaded solve with natural conditions at the free boundary
/// corners and delta0^2 = integral(spline of g_E) + rho^m * Ig at the
/// enclosing depth m.  The solve happens on the enclosing lattice; deeper
/// tabulation is by the exact cellwise recursion, so large depths stay
/// cheap.
GESpline g_E_values(const FractalSpec& spec, const MultiharmonicTables& mt,
                    const SampleSet& E, int depth);

/// Certified enclosure of delta1(E) = sup g_E by branch-and-bound over
/// cells below the tabulated lattice.  Each cell's upper bound is
/// max(corner values) + mu_w r_w * U with U = max(g1) / (1 - max mu_i r_i);
/// the lower bound is the largest vertex value seen.  With node_cap = 0 the
/// result is the lattice bound alone (always valid, just wider).
struct Delta1Result {
  Rat lower;
  Rat upper;
  bool certified = false;   // upper - lower <= tol reached
  long long nodes = 0;      // cells expanded
};

Delta1Result delta1_bounds(const FractalSpec& spec,
                           const MultiharmonicTables& mt, const GESpline& ge,
                           const Rat& tol, long long node_cap = 4000000);

/// Restriction of E to each cell of a partition (all corner points of every
/// cell must belong to E so that the scaling rules below apply).
struct CellSet {
  Word word;
  SampleSet set;
};

std::vector<CellSet> restrict_sample_set(const FractalSpec& spec,
                                         const SampleSet& E,
                                         const std::vector<Word>& partition);

/// delta0(E)^2 = sum_w mu_w^2 r_w delta0(E_w)^2 over a cell partition.
Rat compose_delta0_sq(const FractalSpec& spec,
                      const std::vector<std::pair<Word, Rat>>& cell_delta0_sq);

/// Interval form of delta1(E) = max_w mu_w r_w delta1(E_w).
std::pair<Rat, Rat> compose_delta1(
    const FractalSpec& spec,
    const std::vector<std::tuple<Word, Rat, Rat>>& cell_delta1);

}  // namespace fraquad
