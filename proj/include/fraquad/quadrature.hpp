// fraquad — natural quadrature weights, weight discrepancies, integration of
// tabulated functions, and assembly of the printed error bounds.
// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <vector>

#include "fraquad/green.hpp"
#include "fraquad/multiharmonic.hpp"
#include "fraquad/spec.hpp"

namespace fraquad {

enum class WeightKind { kNatural, kUniform, kUser };

struct WeightedSampleSet {
  SampleSet set;
  std::vector<Rat> weights;  // aligned with set.points
  WeightKind kind = WeightKind::kUser;
  Rat total;  // sum of the weights (1 for probability measures)
};

/// p(x) = integral of the cardinal spline at x over the self-similar
/// measure, exact.  The weights do not depend on the lattice depth, so the
/// solve always happens on the enclosing lattice of E; when E is a full
/// level-m lattice the weights are the tent masses and no solve is needed.
/// Natural weights are checked positive.
WeightedSampleSet natural_weights(const FractalSpec& spec,
                                  const MultiharmonicTables& mt,
                                  const SampleSet& E);

WeightedSampleSet uniform_weights(const SampleSet& E);

/// User-supplied weights; must sum to 1.
WeightedSampleSet user_weights(const SampleSet& E, std::vector<Rat> w);

/// The coefficient of R^{1/2} in the weight-discrepancy term: sum |p - w|.
Rat delta_Ew(const WeightedSampleSet& p, const WeightedSampleSet& w);

/// sum_x w(x) f(x) for values aligned with the sample points.
Rat integrate_weighted(const WeightedSampleSet& ws,
                       const std::vector<Rat>& values);

/// p_E(x) = sum over partition cells containing x of mu_w p_{E_w}(local x).
WeightedSampleSet compose_weights(const FractalSpec& spec, const SampleSet& E,
                                  const std::vector<CellSet>& parts,
                                  const std::vector<WeightedSampleSet>& cell_w);

/// Spline-quadrature estimate of ||g_E||_q = (integral g_E^q)^{1/q} at the
/// given lattice depth; q = infinity (q <= 0 sentinel) returns the midpoint
/// of the certified sup enclosure.
double gE_norm_q(const FractalSpec& spec, const MultiharmonicTables& mt,
                 const SampleSet& E, double q, int depth);

/// Everything that enters the printed quadrature error bounds, each factor
/// labeled exact or estimated.
struct ErrorBudget {
  Rat delta0_sq;                   // exact
  Rat delta1_lower, delta1_upper;  // certified enclosure of sup g_E
  Rat delta_coeff;                 // sum |p - w|, exact

  double R_used = 0.0;  // resistance scale for the delta_coeff term
  bool R_supplied = false;
  bool R_needed = false;  // false when delta_coeff = 0

  Rat energy_estimate;  // graph energy of f at the budget depth
  bool energy_exact = false;
  Rat laplacian_l1;  // sum over interior of |renormalized Laplacian| * mass
  bool laplacian_exact = false;

  double holder_q = 0.0;      // 0 when the Hoelder term was not requested
  double holder_norm = 0.0;   // ||g_E||_q estimate
  double laplacian_lp = 0.0;  // ||Delta f||_p estimate (p dual to q)

  // Assembled bounds on |integral f - sum w f|.
  double bound_energy = 0.0;           // delta0 * sqrt(E(f)), natural weights
  double bound_laplacian = 0.0;        // delta1_upper * ||Delta f||_1
  double bound_energy_shifted = 0.0;   // (delta0 + coeff sqrt(R)) sqrt(E(f))
  double bound_laplacian_shifted = 0.0;
  double bound_hoelder = 0.0;  // ||g_E||_q ||Delta f||_p + coeff term
};

/// Assemble the budget for values of f tabulated on the level-`depth`
/// lattice.  Exact variance factors may be supplied when the caller knows
/// them (e.g. harmonic f, Green-type f); otherwise graph estimates are used
/// and the corresponding bounds are advisory.
ErrorBudget error_budget(const FractalSpec& spec,
                         const MultiharmonicTables& mt,
                         const WeightedSampleSet& ws,
                         const std::vector<Rat>& f_lattice, int depth,
                         std::optional<double> R_estimate = std::nullopt,
                         std::optional<Rat> exact_energy = std::nullopt,
                         std::optional<Rat> exact_laplacian_l1 = std::nullopt,
                         double holder_q = 0.0);

}  // namespace fraquad
