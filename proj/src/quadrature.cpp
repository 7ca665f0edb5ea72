// fraquad — quadrature weights, discrepancies, and error-bound assembly.
// SPDX-License-Identifier: MIT
#include "fraquad/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fraquad/harmonic.hpp"

namespace fraquad {

namespace {

void check_probability(const WeightedSampleSet& ws, const char* who) {
  Rat sum = 0;
  for (const Rat& w : ws.weights) sum += w;
  if (sum != 1)
    throw std::runtime_error(std::string(who) + ": weights do not sum to 1");
}

}  // namespace

WeightedSampleSet natural_weights(const FractalSpec& spec,
                                  const MultiharmonicTables& mt,
                                  const SampleSet& E) {
  if (E.points.empty())
    throw std::runtime_error("natural_weights: sample set is empty");
  const int m = std::max(E.enclosing_depth, 1);

  WeightedSampleSet out;
  out.set = E;
  out.kind = WeightKind::kNatural;
  out.weights.resize(E.points.size());

  // When E is the whole level-m lattice the cardinal splines are the tent
  // functions, so the weights are the tent masses and no solve is needed.
  // (Any canonical vertex of depth <= m lies on the level-m lattice, so
  // equal cardinality means equal sets.)
  {
    VertexTable table = enumerate_vertices(spec, E.enclosing_depth);
    if (E.points.size() == table.verts.size()) {
      std::vector<Rat> mass = tent_masses(spec, table, mt.iota);
      for (size_t j = 0; j < E.points.size(); ++j)
        out.weights[j] = mass[table.find(E.points[j].key())];
      out.total = 0;
      for (const Rat& w : out.weights) out.total += w;
      check_probability(out, "natural_weights");
      return out;
    }
  }

  CellGraph g = build_graph(spec, m);
  std::vector<int> nodes;
  nodes.reserve(E.points.size());
  for (const VertexId& p : E.points) {
    int idx = g.table.find(p.key());
    if (idx < 0)
      throw std::runtime_error("natural_weights: sample point " + p.key() +
                               " is not on the lattice");
    nodes.push_back(idx);
  }
  Mat<Rat> card = indicator_splines(g.table, g, nodes);
  std::vector<Rat> column(g.table.verts.size());
  for (size_t j = 0; j < nodes.size(); ++j) {
    for (size_t v = 0; v < column.size(); ++v) column[v] = card.at(v, j);
    out.weights[j] = integrate_spline(spec, g.table, mt.iota, column);
    if (out.weights[j] <= 0)
      throw std::runtime_error("natural_weights: weight at " +
                               E.points[j].key() + " is not positive");
  }
  out.total = 0;
  for (const Rat& w : out.weights) out.total += w;
  check_probability(out, "natural_weights");
  return out;
}

WeightedSampleSet uniform_weights(const SampleSet& E) {
  if (E.points.empty())
    throw std::runtime_error("uniform_weights: sample set is empty");
  WeightedSampleSet out;
  out.set = E;
  out.kind = WeightKind::kUniform;
  out.weights.assign(E.points.size(), rat(1, (long)E.points.size()));
  out.total = 1;
  return out;
}

WeightedSampleSet user_weights(const SampleSet& E, std::vector<Rat> w) {
  if (w.size() != E.points.size())
    throw std::runtime_error(
        "user_weights: weight count does not match the sample set");
  WeightedSampleSet out;
  out.set = E;
  out.kind = WeightKind::kUser;
  out.weights = std::move(w);
  out.total = 0;
  for (const Rat& x : out.weights) out.total += x;
  check_probability(out, "user_weights");
  return out;
}

Rat delta_Ew(const WeightedSampleSet& p, const WeightedSampleSet& w) {
  if (p.set.points.size() != w.set.points.size())
    throw std::runtime_error("delta_Ew: weight supports differ");
  Rat sum = 0;
  for (size_t j = 0; j < p.weights.size(); ++j) {
    if (!(p.set.points[j] == w.set.points[j]))
      throw std::runtime_error("delta_Ew: weight supports differ");
    sum += rat_abs(p.weights[j] - w.weights[j]);
  }
  return sum;
}

Rat integrate_weighted(const WeightedSampleSet& ws,
                       const std::vector<Rat>& values) {
  if (values.size() != ws.weights.size())
    throw std::runtime_error(
        "integrate_weighted: value count does not match the sample set");
  Rat sum = 0;
  for (size_t j = 0; j < values.size(); ++j) sum += ws.weights[j] * values[j];
  return sum;
}

WeightedSampleSet compose_weights(
    const FractalSpec& spec, const SampleSet& E,
    const std::vector<CellSet>& parts,
    const std::vector<WeightedSampleSet>& cell_w) {
  if (parts.size() != cell_w.size())
    throw std::runtime_error(
        "compose_weights: one weight set per partition cell is required");
  std::map<std::string, Rat> acc;
  bool natural = true;
  for (size_t i = 0; i < parts.size(); ++i) {
    const SampleSet& local = cell_w[i].set;
    if (local.points.size() != parts[i].set.points.size())
      throw std::runtime_error(
          "compose_weights: cell weights do not match the restricted set");
    for (size_t j = 0; j < local.points.size(); ++j)
      if (!(local.points[j] == parts[i].set.points[j]))
        throw std::runtime_error(
            "compose_weights: cell weights do not match the restricted set");
    if (cell_w[i].kind != WeightKind::kNatural) natural = false;
    const Rat mu_w = word_mu(spec, parts[i].word);
    for (size_t j = 0; j < local.points.size(); ++j) {
      VertexId global = canonicalize(
          spec, parts[i].word + local.points[j].word, local.points[j].n);
      acc[global.key()] += mu_w * cell_w[i].weights[j];
    }
  }
  if (acc.size() != E.points.size())
    throw std::runtime_error(
        "compose_weights: composed support does not match the sample set");
  WeightedSampleSet out;
  out.set = E;
  out.kind = natural ? WeightKind::kNatural : WeightKind::kUser;
  out.weights.reserve(E.points.size());
  out.total = 0;
  for (const VertexId& p : E.points) {
    auto it = acc.find(p.key());
    if (it == acc.end())
      throw std::runtime_error(
          "compose_weights: composed support does not match the sample set");
    out.weights.push_back(it->second);
    out.total += it->second;
  }
  return out;
}

double gE_norm_q(const FractalSpec& spec, const MultiharmonicTables& mt,
                 const SampleSet& E, double q, int depth) {
  const int m = std::max({depth, E.enclosing_depth, 1});
  GESpline ge = g_E_values(spec, mt, E, m);
  if (std::isinf(q)) {
    Delta1Result d1 = delta1_bounds(spec, mt, ge, rat(1, 1000000000));
    return (rat_double(d1.lower) + rat_double(d1.upper)) / 2.0;
  }
  if (!(q >= 1.0))
    throw std::runtime_error("gE_norm_q: q must be at least 1");
  std::vector<Rat> mass = tent_masses(spec, ge.table, mt.iota);
  double acc = 0.0;
  for (size_t v = 0; v < ge.gE.size(); ++v)
    acc += rat_double(mass[v]) * std::pow(rat_double(ge.gE[v]), q);
  return std::pow(acc, 1.0 / q);
}

ErrorBudget error_budget(const FractalSpec& spec,
                         const MultiharmonicTables& mt,
                         const WeightedSampleSet& ws,
                         const std::vector<Rat>& f_lattice, int depth,
                         std::optional<double> R_estimate,
                         std::optional<Rat> exact_energy,
                         std::optional<Rat> exact_laplacian_l1,
                         double holder_q) {
  const int m = std::max({depth, ws.set.enclosing_depth, 1});
  GESpline ge = g_E_values(spec, mt, ws.set, m);
  if (f_lattice.size() != ge.table.verts.size())
    throw std::runtime_error(
        "error_budget: value table size does not match the lattice");

  ErrorBudget b;
  b.delta0_sq = ge.delta0_sq;
  Delta1Result d1 = delta1_bounds(spec, mt, ge, rat(1, 10000000), 500000);
  b.delta1_lower = d1.lower;
  b.delta1_upper = d1.upper;

  b.delta_coeff = 0;
  if (ws.kind != WeightKind::kNatural) {
    WeightedSampleSet nat = natural_weights(spec, mt, ws.set);
    b.delta_coeff = delta_Ew(nat, ws);
  }
  b.R_needed = !is_zero(b.delta_coeff);
  b.R_supplied = R_estimate.has_value();
  if (b.R_supplied)
    b.R_used = *R_estimate;
  else if (b.R_needed)
    b.R_used = rat_double(estimate_resistance_radius(spec, std::min(m, 2)));

  CellGraph g = build_graph(spec, m);
  b.energy_exact = exact_energy.has_value();
  b.energy_estimate = b.energy_exact ? *exact_energy : energy(g, f_lattice);
  if (b.energy_estimate < 0)
    throw std::runtime_error("error_budget: negative energy");

  std::vector<Rat> mass = tent_masses(spec, g.table, mt.iota);
  std::vector<Rat> est = graph_laplacian_estimate(g, mass, f_lattice);
  std::vector<bool> is_boundary(g.table.verts.size(), false);
  for (int idx : g.table.boundary_idx) is_boundary[idx] = true;
  Rat l1 = 0;
  for (size_t v = 0; v < est.size(); ++v)
    if (!is_boundary[v]) l1 += rat_abs(est[v]) * mass[v];
  b.laplacian_exact = exact_laplacian_l1.has_value();
  b.laplacian_l1 = b.laplacian_exact ? *exact_laplacian_l1 : l1;

  const double d0 = std::sqrt(rat_double(b.delta0_sq));
  const double d1u = rat_double(b.delta1_upper);
  const double sqrtE = std::sqrt(rat_double(b.energy_estimate));
  const double L1 = rat_double(b.laplacian_l1);
  const double shift =
      b.R_needed ? rat_double(b.delta_coeff) * std::sqrt(b.R_used) : 0.0;

  b.bound_energy = d0 * sqrtE;
  b.bound_laplacian = d1u * L1;
  b.bound_energy_shifted = (d0 + shift) * sqrtE;
  b.bound_laplacian_shifted = d1u * L1 + shift * sqrtE;

  if (holder_q > 0.0) {
    b.holder_q = holder_q;
    if (std::isinf(holder_q)) {
      b.holder_norm =
          (rat_double(b.delta1_lower) + rat_double(b.delta1_upper)) / 2.0;
      b.laplacian_lp = L1;
    } else {
      double acc = 0.0;
      for (size_t v = 0; v < ge.gE.size(); ++v)
        acc += rat_double(mass[v]) * std::pow(rat_double(ge.gE[v]), holder_q);
      b.holder_norm = std::pow(acc, 1.0 / holder_q);
      if (holder_q == 1.0) {
        double mx = 0.0;
        for (size_t v = 0; v < est.size(); ++v)
          if (!is_boundary[v])
            mx = std::max(mx, std::fabs(rat_double(est[v])));
        b.laplacian_lp = mx;
      } else {
        const double p = holder_q / (holder_q - 1.0);
        double acc_p = 0.0;
        for (size_t v = 0; v < est.size(); ++v)
          if (!is_boundary[v])
            acc_p += rat_double(mass[v]) *
                     std::pow(std::fabs(rat_double(est[v])), p);
        b.laplacian_lp = std::pow(acc_p, 1.0 / p);
      }
    }
    b.bound_hoelder = b.holder_norm * b.laplacian_lp + shift * sqrtE;
  }
  return b;
}

}  // namespace fraquad
