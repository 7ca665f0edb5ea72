// fraquad — tests for the level-1 Gram/inverse-Laplacian/source tables.
// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "fraquad/multiharmonic.hpp"

using namespace fraquad;

namespace {
Rat q(long n, long d) { return rat(n, d); }

int ipos(const MultiharmonicTables& t, const char* key) {
  int v = t.table1.find(key);
  REQUIRE(v >= 0);
  int p = t.pos[v];
  REQUIRE(p >= 0);
  return p;
}
}  // namespace

TEST_CASE("two-map interval tables") {
  MultiharmonicTables t = build_multiharmonic(builtin_spec("interval"));
  CHECK(t.I.at(0, 0) == q(1, 3));
  CHECK(t.I.at(0, 1) == q(1, 6));
  CHECK(t.I.at(1, 1) == q(1, 3));
  REQUIRE(t.interior.size() == 1);
  CHECK(t.X.at(0, 0) == 4);
  CHECK(t.G.at(0, 0) == q(1, 4));
  CHECK(t.b[0] == q(1, 2));
  CHECK(t.g1[0] == q(1, 8));
  CHECK(t.f1.at(0, 0) == q(-1, 16));
  CHECK(t.f1.at(1, 0) == q(-1, 16));
  CHECK(t.rho == q(1, 4));
  CHECK(t.T == q(1, 16));
  CHECK(t.Ig == q(1, 12));
}

TEST_CASE("three-map gasket tables") {
  MultiharmonicTables t = build_multiharmonic(builtin_spec("sg"));
  for (int k = 0; k < 3; ++k)
    for (int kp = 0; kp < 3; ++kp)
      CHECK(t.I.at(k, kp) == (k == kp ? q(7, 45) : q(4, 45)));
  REQUIRE(t.interior.size() == 3);
  for (int p = 0; p < 3; ++p)
    for (int pp = 0; pp < 3; ++pp) {
      CHECK(t.X.at(p, pp) == (p == pp ? q(20, 3) : q(-5, 3)));
      CHECK(t.G.at(p, pp) == (p == pp ? q(9, 50) : q(3, 50)));
    }
  for (int p = 0; p < 3; ++p) {
    CHECK(t.b[p] == q(2, 9));
    CHECK(t.g1[p] == q(1, 15));
  }
  // f_{10} is -3/125 at the two midpoints adjacent to q_0, else -7/375.
  CHECK(t.f1.at(0, ipos(t, "0:1")) == q(-3, 125));
  CHECK(t.f1.at(0, ipos(t, "0:2")) == q(-3, 125));
  CHECK(t.f1.at(0, ipos(t, "1:2")) == q(-7, 375));
  CHECK(t.T == q(2, 45));
  CHECK(t.rho == q(1, 5));
  CHECK(t.Ig == q(1, 18));
  // Source-value lookup tables.
  CHECK(t.g1_cell[0][0] == 0);
  CHECK(t.g1_cell[0][1] == q(1, 15));
  CHECK(t.f1_cell[0][0][1] == q(-3, 125));
}

TEST_CASE("four-map tetrahedral tables") {
  MultiharmonicTables t = build_multiharmonic(builtin_spec("st"));
  for (int k = 0; k < 4; ++k)
    for (int kp = 0; kp < 4; ++kp)
      CHECK(t.I.at(k, kp) == (k == kp ? q(7, 80) : q(13, 240)));
  REQUIRE(t.interior.size() == 6);
  // Interior order is 0:1, 0:2, 0:3, 1:2, 1:3, 2:3; G entries over 72 are
  // 10 on the diagonal, 2 for disjoint midpoint pairs, 3 otherwise.
  const int Gnum[6][6] = {{10, 3, 3, 3, 3, 2}, {3, 10, 3, 3, 2, 3},
                          {3, 3, 10, 2, 3, 3}, {3, 3, 2, 10, 3, 3},
                          {3, 2, 3, 3, 10, 3}, {2, 3, 3, 3, 3, 10}};
  for (int p = 0; p < 6; ++p)
    for (int pp = 0; pp < 6; ++pp)
      CHECK(t.G.at(p, pp) == q(Gnum[p][pp], 72));
  for (int p = 0; p < 6; ++p) {
    CHECK(t.X.at(p, p) == 9);
    CHECK(t.g1[p] == q(1, 24));
    CHECK(t.b[p] == q(1, 8));
  }
  // f_{1k} is -5/432 at midpoints touching q_k, else -4/432.
  const int f1num[4][6] = {{-5, -5, -5, -4, -4, -4},
                           {-5, -4, -4, -5, -5, -4},
                           {-4, -5, -4, -5, -4, -5},
                           {-4, -4, -5, -4, -5, -5}};
  for (int k = 0; k < 4; ++k)
    for (int p = 0; p < 6; ++p) CHECK(t.f1.at(k, p) == q(f1num[k][p], 432));
  CHECK(t.T == q(1, 32));
  CHECK(t.rho == q(1, 6));
  CHECK(t.Ig == q(3, 80));
}

TEST_CASE("six-map gasket variant tables") {
  MultiharmonicTables t = build_multiharmonic(builtin_spec("sg3"));
  for (int k = 0; k < 3; ++k)
    for (int kp = 0; kp < 3; ++kp)
      CHECK(t.I.at(k, kp) == (k == kp ? q(551, 3735) : q(347, 3735)));
  REQUIRE(t.interior.size() == 7);
  // Interior order 0:1, 0:2, 1:0, 1:2, 2:0, 2:1, 3:2 (3:2 is the center).
  const int Gnum[7][7] = {
      {469, 203, 203, 133, 133, 119, 210}, {203, 469, 133, 119, 203, 133, 210},
      {203, 133, 469, 203, 119, 133, 210}, {133, 119, 203, 469, 133, 203, 210},
      {133, 203, 119, 133, 469, 203, 210}, {119, 133, 133, 203, 203, 469, 210},
      {210, 210, 210, 210, 210, 210, 420}};
  for (int p = 0; p < 7; ++p)
    for (int pp = 0; pp < 7; ++pp)
      CHECK(t.G.at(p, pp) == q(Gnum[p][pp], 2700));
  int c = ipos(t, "3:2");
  for (int p = 0; p < 7; ++p) {
    CHECK(t.g1[p] == (p == c ? q(7, 90) : q(7, 108)));
    CHECK(t.b[p] == (p == c ? q(1, 6) : q(1, 9)));
  }
  const int f1num[3][7] = {
      {-3017, -3017, -2541, -2317, -2541, -2317, -3150},
      {-2541, -2317, -3017, -3017, -2317, -2541, -3150},
      {-2317, -2541, -2317, -2541, -3017, -3017, -3150}};
  for (int k = 0; k < 3; ++k)
    for (int p = 0; p < 7; ++p)
      CHECK(t.f1.at(k, p) == q(f1num[k][p], 121500));
  CHECK(t.T == q(91, 1620));
  CHECK(t.rho == q(7, 90));
  CHECK(t.Ig == q(91, 1494));
}

TEST_CASE("n-map simplex family tables") {
  MultiharmonicTables t5 = build_multiharmonic(builtin_spec("nhedron:5"));
  for (int k = 0; k < 5; ++k)
    for (int kp = 0; kp < 5; ++kp)
      CHECK(t5.I.at(k, kp) == (k == kp ? q(29, 525) : q(19, 525)));
  CHECK(t5.Ig == q(2, 75));
  MultiharmonicTables t6 = build_multiharmonic(builtin_spec("nhedron:6"));
  for (int k = 0; k < 6; ++k)
    for (int kp = 0; kp < 6; ++kp)
      CHECK(t6.I.at(k, kp) == (k == kp ? q(19, 504) : q(13, 504)));
  CHECK(t6.Ig == q(5, 252));
}

TEST_CASE("Gram matrix sum rules") {
  for (const char* id : {"interval", "sg", "st", "sg3", "nhedron:7"}) {
    MultiharmonicTables t = build_multiharmonic(builtin_spec(id));
    int N = t.I.rows;
    Rat total = 0;
    for (int k = 0; k < N; ++k) {
      Rat row = 0;
      for (int kp = 0; kp < N; ++kp) row += t.I.at(k, kp);
      CHECK(row == t.iota[k]);  // sum_k' h_k' = 1
      total += row;
    }
    CHECK(total == 1);
  }
}

TEST_CASE("refinement quadrature converges to the Gram matrix") {
  FractalSpec sg = builtin_spec("sg");
  MultiharmonicTables t = build_multiharmonic(sg);
  auto maxdiff = [&](int depth) {
    Mat<double> est = gram_refinement_estimate(sg, t.ext, t.iota, depth);
    double worst = 0;
    for (int k = 0; k < 3; ++k)
      for (int kp = 0; kp < 3; ++kp)
        worst = std::max(worst,
                         std::fabs(est.at(k, kp) - rat_double(t.I.at(k, kp))));
    return worst;
  };
  double d7 = maxdiff(7);
  CHECK(d7 > 2.2e-6);  // frozen: 2.276e-06
  CHECK(d7 < 2.3e-6);
  double d12 = maxdiff(12);
  CHECK(d12 < 1e-8);  // frozen: 7.282e-10
  CHECK(d12 > 1e-10);
}
