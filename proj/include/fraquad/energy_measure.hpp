// fraquad — harmonic energy measures: the pair-basis calculus, cell
// transport matrices, basic integrals, and energy-measure quadrature
// weights.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fraquad/harmonic.hpp"
#include "fraquad/linalg.hpp"
#include "fraquad/quadrature.hpp"
#include "fraquad/spec.hpp"

namespace fraquad {

/// A signed combination of the pair measures nu_{jk} (energy measure of the
/// cardinal pair (h_j, h_k)), coefficients over the lexicographic pairs
/// j < k.  The point measures nu_i (energy measure of h_i) are a derived
/// view, since in general they do not span.
struct EnergyMeasure {
  std::vector<Rat> c;
  bool nonnegative = false;  // known-nonnegative provenance
};

/// Per-map cell transport matrices and the basic integrals of the cardinal
/// harmonics against the pair measures.
struct EnergyTables {
  std::vector<std::pair<int, int>> pairs;  // lexicographic (j, k), j < k
  std::vector<Rat> pair_mass;              // nu_jk(K) = E(h_j, h_k)
  std::vector<Mat<Rat>> M;                 // one P x P matrix per map

  // Basic integrals: B.at(i, p) = integral of h_i against the p-th pair
  // measure.  The defining self-similar system can be rank-deficient for
  // some models, so failure is a first-class result, not an exception.
  bool basic_ok = false;
  std::string basic_reason;
  Mat<Rat> B;  // N0 x P
  Mat<Rat> D;  // N0 x N0: D.at(i, j) = integral of h_i against nu_j

  int pair_index(int j, int k) const;
};

/// Build the transport matrices and (when `with_basic`) solve the
/// self-similar system for the basic integrals.  The exact overdetermined
/// solve grows steeply with the boundary size, so callers that only need
/// the M family can skip it; cell integration then reports basic_ok=false.
EnergyTables build_energy_tables(const FractalSpec& spec,
                                 const ExtensionTable& ext,
                                 bool with_basic = true);

/// Energy measure of the harmonic pair with boundary vectors a and b:
/// c_{jk} = a_j b_k + a_k b_j - a_j b_j - a_k b_k.
EnergyMeasure decompose_pair(const FractalSpec& spec,
                             const std::vector<Rat>& a,
                             const std::vector<Rat>& b);

/// Sum of the point measures nu_i (every pair coefficient is -2).
EnergyMeasure kusuoka_measure(const FractalSpec& spec);

/// Conversion between the point basis {nu_i} and the pair basis {nu_jk}.
/// Point-to-pairs is always defined (nu_i = -sum_{k != i} nu_ik); the
/// reverse direction solves exactly and throws when the point measures do
/// not span for the given model.
enum class BasisDirection { kPointToPairs, kPairsToPoint };
std::vector<Rat> sg_basis_convert(const FractalSpec& spec, BasisDirection dir,
                                  const std::vector<Rat>& v);

Rat measure_mass(const EnergyTables& t, const EnergyMeasure& nu);

/// Scale to total mass 1 (explicit, never implicit); zero mass is an error.
EnergyMeasure normalize_measure(const EnergyTables& t,
                                const EnergyMeasure& nu);

/// Ordered product M_{w_1} M_{w_2} ... (empty word gives the identity).
Mat<Rat> m_word(const EnergyTables& t, const Word& w);

/// Integral of the harmonic function with boundary vector h over the cell
/// F_w(K) against nu: c^T M_w (vector of integrals of h compose F_w).
Rat cell_integral(const FractalSpec& spec, const ExtensionTable& ext,
                  const EnergyTables& t, const std::vector<Rat>& h,
                  const Word& w, const EnergyMeasure& nu);

/// Integral against nu of the piecewise-harmonic interpolant of `values`
/// (given on all vertices of `table`): the sum of cell integrals of the
/// harmonic pieces.
Rat integrate_spline_energy(const FractalSpec& spec,
                            const ExtensionTable& ext, const EnergyTables& t,
                            const VertexTable& table,
                            const std::vector<Rat>& values,
                            const EnergyMeasure& nu);

/// Quadrature weights for nu: p(x) = integral of the cardinal spline at x
/// against nu; the weights sum to nu(K), not to 1, unless nu was
/// normalized.  A measure of indefinite sign sets `warning` (the error
/// bounds of the quadrature theory require a nonnegative measure).
WeightedSampleSet energy_weights(const FractalSpec& spec,
                                 const MultiharmonicTables& mt,
                                 const EnergyTables& t, const SampleSet& E,
                                 const EnergyMeasure& nu,
                                 std::string* warning = nullptr);

}  // namespace fraquad
