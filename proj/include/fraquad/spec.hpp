// fraquad — FractalSpec: contractions, harmonic structure, identifications,
// optional planar embedding; built-in models and JSON (de)serialization.
// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraquad/rational.hpp"

namespace fraquad {

/// One level-1 address (map index, boundary index) meaning F_i q_n.
struct Addr1 {
  int i = 0, n = 0;
  bool operator==(const Addr1& o) const { return i == o.i && n == o.n; }
  bool operator<(const Addr1& o) const {
    return i != o.i ? i < o.i : n < o.n;
  }
};

/// Planar affine map x -> A x + t (plot embedding only; exact rationals so
/// emitted figures are byte-stable).
struct AffineMap {
  std::array<std::array<Rat, 2>, 2> A{{{Rat(0), Rat(0)}, {Rat(0), Rat(0)}}};
  std::array<Rat, 2> t{Rat(0), Rat(0)};
};

struct Embedding {
  std::vector<std::array<Rat, 2>> q;  // boundary point coordinates
  std::vector<AffineMap> maps;        // one per contraction
};

/// The p.c.f. self-similar structure: N contractions F_i with energy
/// renormalizers r_i and measure weights mu_i, the boundary energy form
/// E0(u) = sum c_jk (u_j - u_k)^2, and the level-1 gluing relations.
struct FractalSpec {
  std::string name;  // display name, e.g. "sg" or a file path
  int n_maps = 0;
  int n_boundary = 0;
  std::vector<Rat> r;
  std::vector<Rat> mu;
  std::vector<std::vector<Rat>> c;  // n_boundary x n_boundary, symmetric, 0 diag
  std::vector<std::pair<Addr1, Addr1>> identifications;
  std::optional<Embedding> embedding;
  std::vector<std::string> labels;  // per-map display labels (optional)

  const std::string& label(int i) const {
    static const std::string digits[10] = {"0", "1", "2", "3", "4",
                                           "5", "6", "7", "8", "9"};
    return (int)labels.size() > i ? labels[i] : digits[i];
  }
};

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

/// Built-in models: "interval", "sg", "st", "sg3", "nhedron:<n>".
FractalSpec builtin_spec(const std::string& id);

/// Resolve "builtin:<id>" or a JSON file path.
FractalSpec resolve_spec(const std::string& arg);

FractalSpec load_spec_json(const std::string& path);
std::string spec_to_json(const FractalSpec& spec);

/// Check the FractalSpec invariants (measure normalization, r range,
/// identification consistency, level-1 connectivity, junction multiplicity).
/// Report-style: never throws on a bad spec.
ValidationReport validate_spec(const FractalSpec& spec);

}  // namespace fraquad
