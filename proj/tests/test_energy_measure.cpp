// fraquad — tests for the energy-measure calculus.
// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "fraquad/energy_measure.hpp"
#include "fraquad/green.hpp"

using namespace fraquad;

namespace {

Rat q(long n, long d) { return rat(n, d); }

std::vector<Rat> unit(int n, int i) {
  std::vector<Rat> e(n, Rat(0));
  e[i] = 1;
  return e;
}

Mat<Rat> from_rows(const std::vector<std::vector<long>>& rows, long den) {
  Mat<Rat> m((int)rows.size(), (int)rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m.at(i, j) = rat(rows[i][j], den);
  return m;
}

bool mat_eq(const Mat<Rat>& a, const Mat<Rat>& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (a.at(i, j) != b.at(i, j)) return false;
  return true;
}

Mat<Rat> transpose(const Mat<Rat>& a) {
  Mat<Rat> t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

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

}  // namespace

TEST_CASE("pair decomposition and the point-measure view") {
  FractalSpec sg = builtin_spec("sg");
  const int n = sg.n_boundary;

  EnergyMeasure nu0 = decompose_pair(sg, unit(n, 0), unit(n, 0));
  CHECK(nu0.c == std::vector<Rat>{Rat(-1), Rat(-1), Rat(0)});
  CHECK(nu0.nonnegative);
  CHECK(nu0.c ==
        sg_basis_convert(sg, BasisDirection::kPointToPairs, unit(n, 0)));

  EnergyMeasure nu01 = decompose_pair(sg, unit(n, 0), unit(n, 1));
  CHECK(nu01.c == std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
  CHECK_FALSE(nu01.nonnegative);
  // The pair measure of (h_0, h_1) in the point basis.
  CHECK(sg_basis_convert(sg, BasisDirection::kPairsToPoint, nu01.c) ==
        std::vector<Rat>{q(-1, 2), q(-1, 2), q(1, 2)});

  // Bilinearity.
  std::vector<Rat> a = {Rat(1), Rat(2), Rat(-1)};
  std::vector<Rat> b = {Rat(0), Rat(3), Rat(1)};
  std::vector<Rat> a2 = {Rat(2), Rat(4), Rat(-2)};
  std::vector<Rat> b3 = {Rat(0), Rat(9), Rat(3)};
  EnergyMeasure d1 = decompose_pair(sg, a, b);
  EnergyMeasure d6 = decompose_pair(sg, a2, b3);
  for (size_t p = 0; p < d1.c.size(); ++p)
    CHECK(d6.c[p] == Rat(6 * d1.c[p]));

  // Round trips through the pair basis.
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> c =
        sg_basis_convert(sg, BasisDirection::kPointToPairs, unit(n, i));
    CHECK(sg_basis_convert(sg, BasisDirection::kPairsToPoint, c) ==
          unit(n, i));
  }
  std::vector<Rat> u = {q(1, 2), q(-2, 3), Rat(5)};
  CHECK(sg_basis_convert(
            sg, BasisDirection::kPairsToPoint,
            sg_basis_convert(sg, BasisDirection::kPointToPairs, u)) == u);

  // The sum of the point measures doubles every pair coefficient.
  CHECK(kusuoka_measure(sg).c == std::vector<Rat>(3, Rat(-2)));
  CHECK(sg_basis_convert(sg, BasisDirection::kPointToPairs,
                         {Rat(1), Rat(1), Rat(1)}) ==
        std::vector<Rat>(3, Rat(-2)));

  // On the interval the two point measures coincide, so they cannot span.
  FractalSpec iv = builtin_spec("interval");
  CHECK_THROWS(
      sg_basis_convert(iv, BasisDirection::kPairsToPoint, {Rat(1)}));
}

TEST_CASE("transport matrices match the tabulated families") {
  SUBCASE("unit interval") {
    FractalSpec iv = builtin_spec("interval");
    EnergyTables t = build_energy_tables(iv, extension_matrices(iv));
    CHECK(t.pair_mass == std::vector<Rat>{Rat(-1)});
    CHECK(t.M[0].at(0, 0) == q(1, 2));
    CHECK(t.M[1].at(0, 0) == q(1, 2));
  }
  SUBCASE("three-map gasket") {
    FractalSpec sg = builtin_spec("sg");
    EnergyTables t = build_energy_tables(sg, extension_matrices(sg));
    CHECK(mat_eq(t.M[0], from_rows({{6, 3, 0}, {3, 6, 0}, {-2, -2, 1}}, 15)));
    CHECK(mat_eq(t.M[1], from_rows({{6, 0, 3}, {-2, 1, -2}, {3, 0, 6}}, 15)));
    CHECK(mat_eq(t.M[2], from_rows({{1, -2, -2}, {0, 6, 3}, {0, 3, 6}}, 15)));
  }
  SUBCASE("four-map tetrahedral model") {
    FractalSpec st = builtin_spec("st");
    EnergyTables t = build_energy_tables(st, extension_matrices(st));
    CHECK(mat_eq(t.M[0], from_rows({{8, 4, 4, 0, 0, 0},
                                    {4, 8, 4, 0, 0, 0},
                                    {4, 4, 8, 0, 0, 0},
                                    {-2, -2, -1, 1, 0, 0},
                                    {-2, -1, -2, 0, 1, 0},
                                    {-1, -2, -2, 0, 0, 1}},
                                   24)));
    CHECK(mat_eq(t.M[1], from_rows({{8, 0, 0, 4, 4, 0},
                                    {-2, 1, 0, -2, -1, 0},
                                    {-2, 0, 1, -1, -2, 0},
                                    {4, 0, 0, 8, 4, 0},
                                    {4, 0, 0, 4, 8, 0},
                                    {-1, 0, 0, -2, -2, 1}},
                                   24)));
    CHECK(mat_eq(t.M[2], from_rows({{1, -2, 0, -2, 0, -1},
                                    {0, 8, 0, 4, 0, 4},
                                    {0, -2, 1, -1, 0, -2},
                                    {0, 4, 0, 8, 0, 4},
                                    {0, -1, 0, -2, 1, -2},
                                    {0, 4, 0, 4, 0, 8}},
                                   24)));
    CHECK(mat_eq(t.M[3], from_rows({{1, 0, -2, 0, -2, -1},
                                    {0, 1, -2, 0, -1, -2},
                                    {0, 0, 8, 0, 4, 4},
                                    {0, 0, -1, 1, -2, -2},
                                    {0, 0, 4, 0, 8, 4},
                                    {0, 0, 4, 0, 4, 8}},
                                   24)));
  }
  SUBCASE("six-map gasket variant") {
    FractalSpec sg3 = builtin_spec("sg3");
    EnergyTables t = build_energy_tables(sg3, extension_matrices(sg3));
    CHECK(mat_eq(t.M[0],
                 from_rows({{28, 21, 0}, {21, 28, 0}, {-12, -12, 1}}, 105)));
    CHECK(mat_eq(t.M[1],
                 from_rows({{28, 0, 21}, {-12, 1, -12}, {21, 0, 28}}, 105)));
    CHECK(mat_eq(t.M[2],
                 from_rows({{1, -12, -12}, {0, 28, 21}, {0, 21, 28}}, 105)));
    CHECK(mat_eq(t.M[3],
                 from_rows({{16, 3, 3}, {0, 6, -2}, {0, -2, 6}}, 105)));
    CHECK(mat_eq(t.M[4],
                 from_rows({{6, 0, -2}, {3, 16, 3}, {-2, 0, 6}}, 105)));
    CHECK(mat_eq(t.M[5],
                 from_rows({{6, -2, 0}, {-2, 6, 0}, {3, 3, 16}}, 105)));
  }
  SUBCASE("cell masses refine consistently") {
    for (const char* id : {"interval", "sg", "st", "sg3", "nhedron:5"}) {
      FractalSpec spec = builtin_spec(id);
      EnergyTables t = build_energy_tables(spec, extension_matrices(spec));
      std::vector<Rat> total(t.pair_mass.size(), Rat(0));
      for (int i = 0; i < spec.n_maps; ++i) {
        std::vector<Rat> part = mat_vec(t.M[i], t.pair_mass);
        for (size_t p = 0; p < total.size(); ++p) total[p] += part[p];
      }
      CHECK(total == t.pair_mass);
    }
  }
}

TEST_CASE("equidistant family: generated matrices equal the closed form") {
  for (int n = 3; n <= 10; ++n) {
    FractalSpec spec = builtin_spec("nhedron:" + std::to_string(n));
    EnergyTables t = build_energy_tables(spec, extension_matrices(spec),
                                         /*with_basic=*/false);
    auto xi = [&](int a, int b, int c) -> long {
      if (a == b && b == c) return n + 2;
      if (a == b || a == c) return 2;
      if (b == c) return 0;
      return 1;
    };
    for (int i = 0; i < n; ++i) {
      for (size_t row = 0; row < t.pairs.size(); ++row) {
        const auto [j, k] = t.pairs[row];
        for (size_t col = 0; col < t.pairs.size(); ++col) {
          const auto [l, m] = t.pairs[col];
          long num = xi(j, i, l) * xi(k, i, m) + xi(j, i, m) * xi(k, i, l) -
                     xi(j, i, l) * xi(k, i, l) - xi(j, i, m) * xi(k, i, m);
          CHECK(t.M[i].at(row, col) == rat(num, (long)n * (n + 2)));
        }
      }
    }
  }
}

TEST_CASE("word transport and frozen cell data") {
  SUBCASE("three-map gasket") {
    FractalSpec sg = builtin_spec("sg");
    ExtensionTable ext = extension_matrices(sg);
    EnergyTables t = build_energy_tables(sg, ext);
    REQUIRE(t.basic_ok);

    CHECK(mat_eq(m_word(t, ""), Mat<Rat>::identity(3)));
    CHECK(mat_eq(m_word(t, "1"), t.M[1]));
    CHECK(mat_eq(m_word(t, "01"), mat_mul(t.M[0], t.M[1])));

    const std::vector<Rat> ones(3, Rat(1));
    const std::vector<Rat> h0 = unit(3, 0);
    struct Frozen {
      Word w;
      std::vector<Rat> mass;  // per pair measure
      std::vector<Rat> ih0;   // integral of h_0, per pair measure
    };
    const std::vector<Frozen> frozen = {
        {"0", {q(-3, 5), q(-3, 5), q(1, 5)},
         {q(-21, 50), q(-21, 50), q(4, 25)}},
        {"01", {q(-1, 5), q(-1, 25), q(1, 75)},
         {q(-127, 1250), q(-29, 1250), q(16, 1875)}},
        {"012", {q(-1, 75), q(-1, 375), q(-11, 1125)},
         {q(-641, 93750), q(-139, 93750), q(-706, 140625)}},
    };
    for (const Frozen& f : frozen) {
      for (int p = 0; p < 3; ++p) {
        EnergyMeasure pair;
        pair.c = unit(3, p);
        CHECK(cell_integral(sg, ext, t, ones, f.w, pair) == f.mass[p]);
        CHECK(cell_integral(sg, ext, t, h0, f.w, pair) == f.ih0[p]);
      }
    }
  }
  SUBCASE("unit interval") {
    FractalSpec iv = builtin_spec("interval");
    ExtensionTable ext = extension_matrices(iv);
    EnergyTables t = build_energy_tables(iv, ext);
    REQUIRE(t.basic_ok);
    EnergyMeasure pair;
    pair.c = {Rat(1)};
    const std::vector<Rat> ones(2, Rat(1));
    const std::vector<Rat> h0 = unit(2, 0);
    CHECK(cell_integral(iv, ext, t, ones, "0", pair) == q(-1, 2));
    CHECK(cell_integral(iv, ext, t, h0, "0", pair) == q(-3, 8));
    CHECK(cell_integral(iv, ext, t, ones, "01", pair) == q(-1, 4));
    CHECK(cell_integral(iv, ext, t, h0, "01", pair) == q(-5, 32));
    CHECK(cell_integral(iv, ext, t, ones, "010", pair) == q(-1, 8));
    CHECK(cell_integral(iv, ext, t, h0, "010", pair) == q(-11, 128));
  }
}

TEST_CASE("basic integrals solve exactly with the tabulated pattern") {
  // The exact overdetermined solve gets expensive beyond seven boundary
  // points; the larger equidistant models are covered by substitution below.
  std::vector<std::string> ids = {"interval", "sg", "st", "sg3"};
  for (int n = 3; n <= 7; ++n) ids.push_back("nhedron:" + std::to_string(n));
  for (const std::string& id : ids) {
    FractalSpec spec = builtin_spec(id);
    EnergyTables t = build_energy_tables(spec, extension_matrices(spec));
    REQUIRE_MESSAGE(t.basic_ok, id << ": " << t.basic_reason);
    for (size_t p = 0; p < t.pairs.size(); ++p) {
      CHECK(t.pair_mass[p] == Rat(-1));
      const auto [j, k] = t.pairs[p];
      Rat col_sum = 0;
      for (int i = 0; i < spec.n_boundary; ++i) {
        CHECK(t.B.at(i, (int)p) ==
              ((i == j || i == k) ? q(-1, 2) : Rat(0)));
        col_sum += t.B.at(i, (int)p);
      }
      CHECK(col_sum == t.pair_mass[p]);
    }
    for (int i = 0; i < spec.n_boundary; ++i)
      for (int j = 0; j < spec.n_boundary; ++j)
        CHECK(t.D.at(i, j) ==
              (i == j ? Rat(q(spec.n_boundary - 1, 2)) : q(1, 2)));
  }

  SUBCASE("tabulated pattern satisfies the defining system for n = 8..10") {
    for (int n = 8; n <= 10; ++n) {
      FractalSpec spec = builtin_spec("nhedron:" + std::to_string(n));
      ExtensionTable ext = extension_matrices(spec);
      EnergyTables t = build_energy_tables(spec, ext, /*with_basic=*/false);
      CHECK(!t.basic_ok);
      const int P = (int)t.pairs.size();
      Mat<Rat> claimed(n, P);
      for (int p = 0; p < P; ++p) {
        const auto [j, k] = t.pairs[p];
        for (int i = 0; i < n; ++i)
          claimed.at(i, p) = (i == j || i == k) ? q(-1, 2) : Rat(0);
      }
      // B[i][jk] = sum_l sum_pq (M_l)_{jk,pq} sum_m A_l(m, i) B[m][pq]
      for (int i = 0; i < n; ++i) {
        std::vector<std::vector<Rat>> lift(spec.n_maps,
                                           std::vector<Rat>(P, Rat(0)));
        for (int l = 0; l < spec.n_maps; ++l)
          for (int col = 0; col < P; ++col)
            for (int m = 0; m < n; ++m)
              lift[l][col] += ext.A[l].at(m, i) * claimed.at(m, col);
        for (int row = 0; row < P; ++row) {
          Rat acc = 0;
          for (int l = 0; l < spec.n_maps; ++l)
            for (int col = 0; col < P; ++col)
              acc += t.M[l].at(row, col) * lift[l][col];
          CHECK(acc == claimed.at(i, row));
        }
      }
      for (int row = 0; row < P; ++row) {
        Rat col_sum = 0;
        for (int i = 0; i < n; ++i) col_sum += claimed.at(i, row);
        CHECK(col_sum == t.pair_mass[row]);
      }
    }
  }
}

TEST_CASE("point-basis transport is conjugate to pair-basis transport") {
  FractalSpec sg = builtin_spec("sg");
  ExtensionTable ext = extension_matrices(sg);
  EnergyTables t = build_energy_tables(sg, ext);
  const int n = sg.n_boundary;
  const int P = (int)t.pairs.size();

  Mat<Rat> C(P, n), R(n, P);
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> col =
        sg_basis_convert(sg, BasisDirection::kPointToPairs, unit(n, i));
    for (int p = 0; p < P; ++p) C.at(p, i) = col[p];
  }
  for (int p = 0; p < P; ++p) {
    std::vector<Rat> col =
        sg_basis_convert(sg, BasisDirection::kPairsToPoint, unit(P, p));
    for (int i = 0; i < n; ++i) R.at(i, p) = col[i];
  }

  const std::vector<Mat<Rat>> expected = {
      from_rows({{9, 0, 0}, {2, 2, -1}, {2, -1, 2}}, 15),
      from_rows({{2, 2, -1}, {0, 9, 0}, {-1, 2, 2}}, 15),
      from_rows({{2, -1, 2}, {-1, 2, 2}, {0, 0, 9}}, 15),
  };
  for (int i = 0; i < sg.n_maps; ++i) {
    Mat<Rat> conj = mat_mul(mat_mul(transpose(C), t.M[i]), transpose(R));
    CHECK(mat_eq(conj, expected[i]));
  }

  // First row of the point-basis transport: integrating over the first
  // cell against nu_0 just scales the pulled-back integral by 3/5.
  EnergyMeasure nu0;
  nu0.c = sg_basis_convert(sg, BasisDirection::kPointToPairs, unit(n, 0));
  nu0.nonnegative = true;
  const std::vector<Rat> f = {Rat(2), q(-1, 3), Rat(1)};
  std::vector<Rat> fa = mat_vec(ext.A[0], f);
  Rat rhs = 0;
  for (int m = 0; m < n; ++m) rhs += fa[m] * t.D.at(m, 0);
  CHECK(cell_integral(sg, ext, t, f, "0", nu0) == Rat(q(3, 5) * rhs));
}

TEST_CASE("cell integrals are additive over refinements") {
  struct Case {
    const char* id;
    std::vector<Rat> h;
    std::vector<Rat> c;
  };
  const std::vector<Case> cases = {
      {"sg", {Rat(1), Rat(-2), q(1, 3)}, {q(1, 2), q(-1, 4), q(1, 7)}},
      {"st",
       {Rat(1), Rat(0), Rat(-1), Rat(2)},
       {Rat(1), q(1, 2), Rat(0), q(-1, 3), q(1, 5), Rat(2)}},
  };
  for (const Case& cs : cases) {
    FractalSpec spec = builtin_spec(cs.id);
    ExtensionTable ext = extension_matrices(spec);
    EnergyTables t = build_energy_tables(spec, ext);
    EnergyMeasure nu;
    nu.c = cs.c;
    Rat total = cell_integral(spec, ext, t, cs.h, "", nu);
    for (int depth = 1; depth <= 3; ++depth) {
      VertexTable table = enumerate_vertices(spec, depth);
      Rat sum = 0;
      for (const auto& cell : table.cells)
        sum += cell_integral(spec, ext, t, cs.h, cell.word, nu);
      CHECK(sum == total);
    }
  }
}

TEST_CASE("spline integration and energy-measure weights") {
  FractalSpec sg = builtin_spec("sg");
  MultiharmonicTables mt = build_multiharmonic(sg);
  EnergyTables t = build_energy_tables(sg, mt.ext);
  EnergyMeasure kus = kusuoka_measure(sg);

  // Total masses: each cardinal harmonic has energy 2.
  CHECK(measure_mass(t, kus) == Rat(6));
  EnergyMeasure nu0;
  nu0.c = sg_basis_convert(sg, BasisDirection::kPointToPairs,
                           unit(sg.n_boundary, 0));
  nu0.nonnegative = true;
  CHECK(measure_mass(t, nu0) == Rat(2));

  VertexTable v2 = enumerate_vertices(sg, 2);
  const std::vector<Rat> ones(v2.verts.size(), Rat(1));
  CHECK(integrate_spline_energy(sg, mt.ext, t, v2, ones, kus) == Rat(6));
  CHECK(integrate_spline_energy(sg, mt.ext, t, v2, ones, nu0) == Rat(2));

  // A harmonic interpolant integrates to the cell-free formula.
  std::vector<Rat> h = {Rat(1), q(1, 2), Rat(-1)};
  std::vector<Rat> hv = h;
  VertexTable coarse = enumerate_vertices(sg, 0);
  for (int d = 1; d <= 2; ++d) {
    VertexTable fine = enumerate_vertices(sg, d);
    hv = refine_values(sg, mt.ext, coarse, fine, hv);
    coarse = std::move(fine);
  }
  Rat direct = 0;
  for (int i = 0; i < sg.n_boundary; ++i)
    for (size_t p = 0; p < t.pairs.size(); ++p)
      direct += h[i] * kus.c[p] * t.B.at(i, (int)p);
  CHECK(integrate_spline_energy(sg, mt.ext, t, v2, hv, kus) == direct);

  SUBCASE("weights on the boundary set") {
    SampleSet v0 = set_from_keys(sg, {":0", ":1", ":2"});
    WeightedSampleSet w0 =
        energy_weights(sg, mt, t, v0, normalize_measure(t, nu0));
    CHECK(w0.weights == std::vector<Rat>{q(1, 2), q(1, 4), q(1, 4)});
    CHECK(w0.total == 1);

    WeightedSampleSet wk =
        energy_weights(sg, mt, t, v0, normalize_measure(t, kus));
    CHECK(wk.weights == std::vector<Rat>{q(1, 3), q(1, 3), q(1, 3)});
  }

  SUBCASE("level-1 weights sum to the mass; exact on harmonics") {
    SampleSet v1 = set_from_keys(sg, {":0", ":1", ":2", "0:1", "0:2", "1:2"});
    WeightedSampleSet wk = energy_weights(sg, mt, t, v1, kus);
    CHECK(wk.total == Rat(6));
    WeightedSampleSet wkn =
        energy_weights(sg, mt, t, v1, normalize_measure(t, kus));
    CHECK(wkn.total == 1);

    // Harmonic functions are splines of every node set, so the weighted
    // sum reproduces the integral exactly.
    VertexTable t1 = enumerate_vertices(sg, 1);
    std::vector<Rat> h1 = refine_values(sg, mt.ext,
                                        enumerate_vertices(sg, 0), t1, h);
    std::vector<Rat> node_vals;
    for (const VertexId& x : v1.points)
      node_vals.push_back(h1[t1.find(x.key())]);
    Rat lhs = integrate_weighted(wk, node_vals);
    CHECK(lhs == direct);  // same harmonic, same measure, full mass
  }

  SUBCASE("indefinite measures carry a warning") {
    SampleSet v0 = set_from_keys(sg, {":0", ":1", ":2"});
    EnergyMeasure indef = decompose_pair(sg, unit(3, 0), unit(3, 1));
    std::string warning;
    energy_weights(sg, mt, t, v0, indef, &warning);
    CHECK(!warning.empty());
    warning.clear();
    energy_weights(sg, mt, t, v0, kus, &warning);
    CHECK(warning.empty());
  }
}
