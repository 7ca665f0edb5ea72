// fraquad — tests for the exact scalar type and dense linear algebra.
// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "fraquad/linalg.hpp"
#include "fraquad/rational.hpp"

using namespace fraquad;

TEST_CASE("rational parse/print round trip") {
  CHECK(rat_str(rat_parse("3/6")) == "1/2");
  CHECK(rat_str(rat_parse("-3/6")) == "-1/2");
  CHECK(rat_str(rat_parse("7")) == "7");
  CHECK(rat_str(rat_parse("0")) == "0");
  CHECK(rat_parse("1/-2") == rat(-1, 2));
  CHECK_THROWS(rat_parse("1.5"));
  CHECK_THROWS(rat_parse("1/0"));
  CHECK_THROWS(rat_parse("x"));
  CHECK_THROWS(rat_parse(""));
}

TEST_CASE("decimal rendering is faithful") {
  CHECK(decimal_str(rat(1, 18)) == "0.0555555555555556");
  CHECK(decimal_str(rat(1, 15)) == "0.0666666666666667");
  CHECK(decimal_str(rat(25, 2)) == "12.5");
  CHECK(decimal_str(rat(1)) == "1");
  CHECK(decimal_str(rat(-1, 3), 5) == "-0.33333");
  CHECK(decimal_str(rat(0)) == "0");
  CHECK(decimal_str(rat(1, 1000000000), 5) == "1e-9");
  CHECK(decimal_str(rat(999, 1000)) == "0.999");
}

TEST_CASE("sqrt presentation via integer square root") {
  // 1/18: delta0(V0) for the three-map gasket = 1/(3 sqrt 2)
  std::string s = sqrt_decimal_str(rat(1, 18), 20);
  CHECK(s.substr(0, 12) == "0.2357022603");
  CHECK(sqrt_decimal_str(rat(4), 10) == "2");
  CHECK(sqrt_decimal_str(rat(1, 4), 10) == "0.5");
  CHECK(sqrt_decimal_str(rat(0), 10) == "0");
}

TEST_CASE("dense solve, inverse, rank on exact rationals") {
  Mat<Rat> a(3, 3);
  int vals[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.at(i, j) = rat(vals[i][j]);
  Mat<Rat> inv = inverse(a);
  CHECK(mat_mul(a, inv) == Mat<Rat>::identity(3));
  std::vector<Rat> b = {rat(1), rat(0), rat(0)};
  std::vector<Rat> x = solve_dense(a, b);
  CHECK(mat_vec(a, x) == b);
  CHECK(rank(a) == 3);

  Mat<Rat> sing(2, 2);
  sing.at(0, 0) = rat(1);
  sing.at(0, 1) = rat(2);
  sing.at(1, 0) = rat(2);
  sing.at(1, 1) = rat(4);
  CHECK(rank(sing) == 1);
  CHECK_THROWS(solve_dense(sing, Mat<Rat>::identity(2)));
}

TEST_CASE("nullspace of a rank-deficient matrix") {
  // rows sum to zero -> (1,1,1) spans the nullspace
  Mat<Rat> L(3, 3);
  int vals[3][3] = {{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) L.at(i, j) = rat(vals[i][j]);
  auto ns = nullspace(L);
  REQUIRE(ns.size() == 1);
  // normalize: all coordinates equal and nonzero
  CHECK(ns[0][0] == ns[0][1]);
  CHECK(ns[0][1] == ns[0][2]);
  CHECK(!is_zero(ns[0][0]));
}

TEST_CASE("overdetermined solve with consistency check") {
  // x = 2, y = 3 from three consistent equations
  Mat<Rat> a(3, 2);
  a.at(0, 0) = rat(1);
  a.at(1, 1) = rat(1);
  a.at(2, 0) = rat(1);
  a.at(2, 1) = rat(1);
  std::vector<Rat> b = {rat(2), rat(3), rat(5)};
  bool ok = false;
  auto x = solve_overdetermined(a, b, ok);
  CHECK(ok);
  CHECK(x[0] == rat(2));
  CHECK(x[1] == rat(3));

  std::vector<Rat> bad = {rat(2), rat(3), rat(6)};
  std::string reason;
  auto y = solve_overdetermined(a, bad, ok, &reason);
  CHECK(!ok);
  CHECK(reason == "inconsistent system");
}

TEST_CASE("random exact solves verify against residuals") {
  std::mt19937 rng(20260813);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 6;
    Mat<Rat> a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a.at(i, j) = rat(d(rng), 1 + (i + j) % 3);
    std::vector<Rat> b(n);
    for (int i = 0; i < n; ++i) b[i] = rat(d(rng));
    try {
      auto x = solve_dense(a, b);
      CHECK(mat_vec(a, x) == b);
    } catch (const std::runtime_error&) {
      CHECK(rank(a) < n);  // singular draws must really be singular
    }
  }
}

TEST_CASE("double path uses partial pivoting") {
  Mat<double> a(2, 2);
  a.at(0, 0) = 1e-14;
  a.at(0, 1) = 1.0;
  a.at(1, 0) = 1.0;
  a.at(1, 1) = 1.0;
  std::vector<double> b = {1.0, 2.0};
  auto x = solve_dense(a, b);
  CHECK(std::abs(x[0] - 1.0) < 1e-9);
  CHECK(std::abs(x[1] - 1.0) < 1e-9);
}
