// fraquad — the level-1 tables behind the product-quadrature construction:
// the Gram matrix of the boundary-cardinal harmonic functions, the interior
// inverse Laplacian, and the level-1 source values built from them.
// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "fraquad/address.hpp"
#include "fraquad/harmonic.hpp"
#include "fraquad/linalg.hpp"
#include "fraquad/spec.hpp"

namespace fraquad {

/// Which construction of the level-1 source values to report as primary.
/// Both are always computed and checked against each other.
enum class G1Source { kF1k, kGreenIdentity };

struct MultiharmonicTables {
  ExtensionTable ext;
  std::vector<Rat> iota;  // integrals of the h_k
  Mat<Rat> I;             // Gram matrix: I(k, k') = integral of h_k h_k'

  VertexTable table1;         // level-1 vertex table
  std::vector<int> interior;  // interior vertex indices, enumeration order
  std::vector<int> pos;       // vertex index -> interior position or -1

  Mat<Rat> X;          // interior block of the level-1 graph Laplacian
  Mat<Rat> G;          // X^{-1}
  std::vector<Rat> b;  // tent masses at the interior vertices
  Mat<Rat> bk;         // bk(k, p) = integral of h_k * (tent at p)

  std::vector<Rat> g1;  // G * b, the level-1 source values (interior order)
  Mat<Rat> f1;          // f1(k, p) = -(G * bk_k)[p]; g1 = -sum_k row_k(f1)

  Rat T;    // sum_p g1[p] b[p]
  Rat rho;  // sum_i mu_i^2 r_i
  Rat Ig;   // T / (1 - rho): integral of the boundary Green-type function

  // Per-cell-corner lookups (0 at boundary corners).
  std::vector<std::vector<Rat>> g1_cell;               // [i][n]
  std::vector<std::vector<std::vector<Rat>>> f1_cell;  // [k][i][n]

  /// g1_cell with the sign/selection implied by `src` (identical values by
  /// construction; kept as separate code paths and cross-checked).
  const std::vector<std::vector<Rat>>& g1_table() const { return g1_cell; }
};

/// Build every level-1 table.  Throws when the Gram fixed point is not
/// one-dimensional or the two source constructions disagree.
MultiharmonicTables build_multiharmonic(const FractalSpec& spec);

/// Floating-point estimate of the Gram matrix by depth-m quadrature of the
/// products h_k h_k' with the level-m tent weights.
Mat<double> gram_refinement_estimate(const FractalSpec& spec,
                                     const ExtensionTable& ext,
                                     const std::vector<Rat>& iota, int depth);

}  // namespace fraquad
