// fraquad — tests for natural quadrature weights and error budgets.
// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fraquad/harmonic.hpp"
#include "fraquad/quadrature.hpp"

using namespace fraquad;

namespace {

Rat q(long n, long d) { return rat(n, d); }

SampleSet set_from_keys(const FractalSpec& spec,
                        const std::vector<std::string>& keys) {
  std::vector<std::pair<Word, int>> raw;
  for (const auto& k : keys) {
    Word w;
    int n;
    REQUIRE(parse_vertex_key(k, w, n));
    raw.push_back({w, n});
  }
  return make_sample_set(spec, raw);
}

SampleSet lattice_set(const FractalSpec& spec, int depth) {
  VertexTable t = enumerate_vertices(spec, depth);
  std::vector<std::pair<Word, int>> raw;
  for (const auto& v : t.verts) raw.push_back({v.word, v.n});
  return make_sample_set(spec, raw);
}

// Values of the boundary-cardinal harmonic function h_k on the level-m
// lattice, by repeated extension.
std::vector<Rat> harmonic_on_level(const FractalSpec& spec,
                                   const ExtensionTable& ext, int k, int m) {
  std::vector<Rat> vals(spec.n_boundary, Rat(0));
  vals[k] = 1;
  VertexTable table = enumerate_vertices(spec, 0);
  for (int d = 1; d <= m; ++d) {
    VertexTable fine = enumerate_vertices(spec, d);
    vals = refine_values(spec, ext, table, fine, vals);
    table = std::move(fine);
  }
  return vals;
}

}  // namespace

TEST_CASE("natural weights of small node sets on the three-map gasket") {
  FractalSpec sg = builtin_spec("sg");
  MultiharmonicTables mt = build_multiharmonic(sg);

  // Boundary plus one midpoint; points sort as :0, :1, :2, 0:1.
  WeightedSampleSet pA =
      natural_weights(sg, mt, set_from_keys(sg, {":0", ":1", ":2", "0:1"}));
  CHECK(pA.kind == WeightKind::kNatural);
  CHECK(pA.total == 1);
  CHECK(pA.weights == std::vector<Rat>{q(5, 27), q(5, 27), q(7, 27),
                                       q(10, 27)});
  CHECK(delta_Ew(pA, uniform_weights(pA.set)) == q(7, 27));

  // Boundary plus the two midpoints flanking q_0.
  WeightedSampleSet pB = natural_weights(
      sg, mt, set_from_keys(sg, {":0", ":1", ":2", "0:1", "0:2"}));
  CHECK(pB.weights == std::vector<Rat>{q(1, 9), q(1, 6), q(1, 6), q(5, 18),
                                       q(10, 36)});
  CHECK(delta_Ew(pB, uniform_weights(pB.set)) == q(14, 45));

  // The full level-1 lattice: 1/9 on the boundary, 2/9 at the midpoints.
  WeightedSampleSet p1 = natural_weights(sg, mt, lattice_set(sg, 1));
  CHECK(p1.weights == std::vector<Rat>{q(1, 9), q(1, 9), q(1, 9), q(2, 9),
                                       q(2, 9), q(2, 9)});
  CHECK(delta_Ew(p1, uniform_weights(p1.set)) == q(1, 3));
}

TEST_CASE("lattice weights are the tent masses") {
  SUBCASE("three-map gasket") {
    FractalSpec sg = builtin_spec("sg");
    MultiharmonicTables mt = build_multiharmonic(sg);
    for (int m = 0; m <= 5; ++m) {
      WeightedSampleSet p = natural_weights(sg, mt, lattice_set(sg, m));
      VertexTable t = enumerate_vertices(sg, m);
      for (size_t j = 0; j < p.weights.size(); ++j) {
        int idx = t.find(p.set.points[j].key());
        bool boundary = p.set.points[j].depth() == 0;
        CHECK(t.eta[idx] == (boundary ? 1 : 2));
        CHECK(p.weights[j] == (boundary ? rat_pow(q(1, 3), m + 1)
                                        : Rat(2 * rat_pow(q(1, 3), m + 1))));
      }
    }
    const std::vector<Rat> series = {Rat(0), q(1, 3), q(8, 45), q(13, 189),
                                     q(80, 3321)};
    for (int m = 0; m <= 4; ++m) {
      WeightedSampleSet p = natural_weights(sg, mt, lattice_set(sg, m));
      CHECK(delta_Ew(p, uniform_weights(p.set)) == series[m]);
    }
  }
  SUBCASE("four-map tetrahedral model") {
    FractalSpec st = builtin_spec("st");
    MultiharmonicTables mt = build_multiharmonic(st);
    const std::vector<Rat> series = {q(3, 10), q(15, 136), q(63, 2080),
                                     q(255, 32896)};
    for (int m = 1; m <= 4; ++m) {
      WeightedSampleSet p = natural_weights(st, mt, lattice_set(st, m));
      CHECK(delta_Ew(p, uniform_weights(p.set)) == series[m - 1]);
    }
  }
  SUBCASE("six-map gasket variant: weights are eta over the cell count") {
    FractalSpec sg3 = builtin_spec("sg3");
    MultiharmonicTables mt = build_multiharmonic(sg3);
    const std::vector<Rat> series = {q(4, 15), q(14, 117), q(473, 4104),
                                     q(16835, 147096)};
    for (int m = 1; m <= 4; ++m) {
      WeightedSampleSet p = natural_weights(sg3, mt, lattice_set(sg3, m));
      VertexTable t = enumerate_vertices(sg3, m);
      Rat cell_norm = 3 * rat_pow(Rat(6), m);
      for (size_t j = 0; j < p.weights.size(); ++j) {
        int idx = t.find(p.set.points[j].key());
        CHECK(p.weights[j] == Rat(t.eta[idx] / cell_norm));
      }
      CHECK(delta_Ew(p, uniform_weights(p.set)) == series[m - 1]);
    }
  }
}

TEST_CASE("weights compose across cell partitions") {
  FractalSpec sg = builtin_spec("sg");
  MultiharmonicTables mt = build_multiharmonic(sg);
  const std::vector<Word> level1 = {"0", "1", "2"};

  SUBCASE("level-2 lattice from level-1 pieces") {
    SampleSet v2 = lattice_set(sg, 2);
    std::vector<CellSet> parts = restrict_sample_set(sg, v2, level1);
    std::vector<WeightedSampleSet> cw;
    for (const CellSet& c : parts)
      cw.push_back(natural_weights(sg, mt, c.set));
    WeightedSampleSet composed = compose_weights(sg, v2, parts, cw);
    WeightedSampleSet direct = natural_weights(sg, mt, v2);
    CHECK(composed.kind == WeightKind::kNatural);
    CHECK(composed.weights == direct.weights);
    CHECK(composed.total == 1);
  }

  SUBCASE("scaled union of the deep midpoint set") {
    SampleSet base =
        set_from_keys(sg, {":0", ":1", ":2", "01:2", "10:2", "20:1"});
    SampleSet e1t = scaled_union(sg, level1, base);
    REQUIRE(e1t.points.size() == 15);

    WeightedSampleSet direct = natural_weights(sg, mt, e1t);
    std::vector<Rat> sorted = direct.weights;
    std::sort(sorted.begin(), sorted.end());
    for (int j = 0; j < 3; ++j) CHECK(sorted[j] == q(1, 27));
    for (int j = 3; j < 15; ++j) CHECK(sorted[j] == q(2, 27));
    CHECK(delta_Ew(direct, uniform_weights(e1t)) == q(8, 45));

    std::vector<CellSet> parts = restrict_sample_set(sg, e1t, level1);
    std::vector<WeightedSampleSet> cw;
    for (const CellSet& c : parts)
      cw.push_back(natural_weights(sg, mt, c.set));
    WeightedSampleSet composed = compose_weights(sg, e1t, parts, cw);
    CHECK(composed.weights == direct.weights);
  }
}

TEST_CASE("random splines are integrated exactly by their natural weights") {
  // A seeded sweep over node sets and spline values on all three gasket
  // models; the wider two-hundred-case sweep runs in the acceptance suite.
  std::mt19937 rng(20260813);
  struct Plan {
    const char* model;
    int depth;
    int sets;
  };
  const std::vector<Plan> plans = {{"sg", 1, 2},  {"sg", 2, 2},  {"sg", 3, 2},
                                   {"st", 1, 2},  {"st", 2, 2},  {"st", 3, 1},
                                   {"sg3", 1, 2}, {"sg3", 2, 2}, {"sg3", 3, 1}};
  for (const Plan& plan : plans) {
    FractalSpec spec = builtin_spec(plan.model);
    MultiharmonicTables mt = build_multiharmonic(spec);
    CellGraph g = build_graph(spec, plan.depth);
    std::vector<Rat> mass = tent_masses(spec, g.table, mt.iota);
    for (int s = 0; s < plan.sets; ++s) {
      std::vector<int> order(g.table.verts.size());
      for (size_t v = 0; v < order.size(); ++v) order[v] = (int)v;
      std::shuffle(order.begin(), order.end(), rng);
      std::uniform_int_distribution<int> size_dist(
          2, std::min<int>(12, (int)order.size()));
      const int k = size_dist(rng);

      std::vector<std::pair<Word, int>> raw;
      for (int j = 0; j < k; ++j)
        raw.push_back({g.table.verts[order[j]].word,
                       g.table.verts[order[j]].n});
      SampleSet E = make_sample_set(spec, raw);
      WeightedSampleSet p = natural_weights(spec, mt, E);
      CHECK(p.total == 1);

      std::uniform_int_distribution<int> num_dist(-12, 12);
      std::uniform_int_distribution<int> den_dist(1, 9);
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<Rat> node_vals(E.points.size());
        for (auto& v : node_vals) v = rat(num_dist(rng), den_dist(rng));
        std::vector<int> nodes;
        for (const VertexId& x : E.points)
          nodes.push_back(g.table.find(x.key()));
        std::vector<Rat> spline =
            solve_spline(g.table, g, nodes, node_vals, Rat(0), mass);
        CHECK(integrate_weighted(p, node_vals) ==
              integrate_spline(spec, g.table, mt.iota, spline));
      }
    }
  }
}

TEST_CASE("q-norms of the boundary Green-type function") {
  FractalSpec sg = builtin_spec("sg");
  MultiharmonicTables mt = build_multiharmonic(sg);
  SampleSet v0 = set_from_keys(sg, {":0", ":1", ":2"});

  // The depth-7 spline quadrature of g itself misses exactly the tail
  // rho^7 * Ig ~ 7.1e-7 of delta0^2.
  double n1 = gE_norm_q(sg, mt, v0, 1.0, 7);
  double diff = rat_double(mt.Ig) - n1;
  CHECK(diff > 6e-7);
  CHECK(diff < 1e-6);

  double ninf =
      gE_norm_q(sg, mt, v0, std::numeric_limits<double>::infinity(), 3);
  CHECK(std::fabs(ninf - 1.0 / 15.0) < 1e-8);

  double n2 = gE_norm_q(sg, mt, v0, 2.0, 7);
  CHECK(n1 <= n2);
  CHECK(n2 <= ninf + 1e-9);

  CHECK_THROWS_WITH(gE_norm_q(sg, mt, v0, 0.5, 3),
                    "gE_norm_q: q must be at least 1");
}

TEST_CASE("error budget for the loaded function on lattice sets") {
  FractalSpec sg = builtin_spec("sg");
  MultiharmonicTables mt = build_multiharmonic(sg);

  for (int m : {1, 3}) {
    SampleSet vm = lattice_set(sg, m);
    WeightedSampleSet p = natural_weights(sg, mt, vm);
    std::vector<Rat> f = g_v0_values(sg, mt, m).values;
    ErrorBudget b = error_budget(sg, mt, p, f, m, std::nullopt, mt.Ig, Rat(1));

    CHECK(b.delta0_sq == rat_pow(mt.rho, m) * mt.Ig);
    CHECK(b.delta_coeff == 0);
    CHECK_FALSE(b.R_needed);
    CHECK(b.energy_exact);
    CHECK(b.laplacian_exact);
    CHECK(b.bound_energy == b.bound_energy_shifted);
    CHECK(b.bound_laplacian == b.bound_laplacian_shifted);

    // The quadrature misses exactly the tail of the integral...
    Rat actual = mt.Ig - integrate_weighted(p, [&] {
                   std::vector<Rat> node_vals;
                   for (const VertexId& x : vm.points)
                     node_vals.push_back(
                         f[enumerate_vertices(sg, m).find(x.key())]);
                   return node_vals;
                 }());
    CHECK(actual == rat_pow(mt.rho, m) * mt.Ig);
    // ...and both exact-factor bounds dominate it (rational comparisons).
    CHECK(Rat(actual * actual) <= Rat(b.delta0_sq * b.energy_estimate));
    CHECK(actual <= Rat(b.delta1_lower * b.laplacian_l1));
  }
}

TEST_CASE("error budget flags and the weight-shift term") {
  FractalSpec sg = builtin_spec("sg");
  MultiharmonicTables mt = build_multiharmonic(sg);
  SampleSet v1 = lattice_set(sg, 1);
  std::vector<Rat> f = harmonic_on_level(sg, mt.ext, 0, 2);

  SUBCASE("harmonic integrand with natural weights: zero residual terms") {
    WeightedSampleSet p = natural_weights(sg, mt, v1);
    ErrorBudget b = error_budget(sg, mt, p, f, 2);
    CHECK_FALSE(b.energy_exact);
    CHECK(b.energy_estimate == 2);  // graph energy is level-independent here
    CHECK(b.laplacian_l1 == 0);     // harmonic functions have zero estimate
    CHECK(b.bound_laplacian == 0.0);
    CHECK(b.bound_energy ==
          doctest::Approx(std::sqrt(rat_double(b.delta0_sq)) * std::sqrt(2))
              .epsilon(1e-14));
  }

  SUBCASE("uniform weights need the resistance scale") {
    WeightedSampleSet u = uniform_weights(v1);
    ErrorBudget b = error_budget(sg, mt, u, f, 2);
    CHECK(b.delta_coeff == q(1, 3));
    CHECK(b.R_needed);
    CHECK_FALSE(b.R_supplied);
    CHECK(b.R_used == doctest::Approx(73.0 / 150.0).epsilon(1e-14));
    CHECK(b.bound_energy_shifted > b.bound_energy);
    CHECK(b.bound_laplacian_shifted >= b.bound_laplacian);

    ErrorBudget bR = error_budget(sg, mt, u, f, 2, 1.0);
    CHECK(bR.R_supplied);
    CHECK(bR.R_used == 1.0);
    CHECK(bR.bound_energy_shifted > b.bound_energy_shifted);
  }

  SUBCASE("Hoelder term") {
    WeightedSampleSet p = natural_weights(sg, mt, v1);
    std::vector<Rat> g3 = g_v0_values(sg, mt, 2).values;
    ErrorBudget b =
        error_budget(sg, mt, p, g3, 2, std::nullopt, std::nullopt,
                     std::nullopt, 2.0);
    CHECK(b.holder_q == 2.0);
    CHECK(b.holder_norm > 0.0);
    CHECK(b.holder_norm <= rat_double(b.delta1_upper) + 1e-12);
    CHECK(b.bound_hoelder > 0.0);
  }

  SUBCASE("value table must match the lattice") {
    WeightedSampleSet p = natural_weights(sg, mt, v1);
    std::vector<Rat> short_f(5, Rat(0));
    CHECK_THROWS_WITH(
        error_budget(sg, mt, p, short_f, 2),
        "error_budget: value table size does not match the lattice");
  }
}

TEST_CASE("weight construction and discrepancy guard rails") {
  FractalSpec sg = builtin_spec("sg");
  MultiharmonicTables mt = build_multiharmonic(sg);
  SampleSet v0 = set_from_keys(sg, {":0", ":1", ":2"});

  CHECK(uniform_weights(v0).kind == WeightKind::kUniform);
  CHECK(user_weights(v0, {q(1, 2), q(1, 4), q(1, 4)}).kind ==
        WeightKind::kUser);
  CHECK_THROWS_WITH(user_weights(v0, {q(1, 2), q(1, 4), q(1, 3)}),
                    "user_weights: weights do not sum to 1");
  CHECK_THROWS_WITH(user_weights(v0, {q(1, 2), q(1, 2)}),
                    "user_weights: weight count does not match the sample set");

  WeightedSampleSet p0 = natural_weights(sg, mt, v0);
  CHECK(p0.weights == std::vector<Rat>{q(1, 3), q(1, 3), q(1, 3)});
  WeightedSampleSet p1 = natural_weights(sg, mt, lattice_set(sg, 1));
  CHECK_THROWS_WITH(delta_Ew(p0, p1), "delta_Ew: weight supports differ");

  // g is not a spline of the level-1 lattice, so natural weights miss it.
  std::vector<Rat> g1 = g_v0_values(sg, mt, 1).values;
  std::vector<Rat> node_vals;
  VertexTable t1 = enumerate_vertices(sg, 1);
  for (const VertexId& x : p1.set.points)
    node_vals.push_back(g1[t1.find(x.key())]);
  CHECK(integrate_weighted(p1, node_vals) == q(2, 45));
  CHECK(integrate_weighted(p1, node_vals) != mt.Ig);
  CHECK(Rat(mt.Ig - integrate_weighted(p1, node_vals)) == q(1, 90));
}
