// fraquad — energy-measure calculus implementation.
// SPDX-License-Identifier: MIT
#include "fraquad/energy_measure.hpp"

#include <stdexcept>

namespace fraquad {

namespace {

std::vector<std::pair<int, int>> make_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) pairs.push_back({j, k});
  return pairs;
}

// Coefficients of h compose F_w in the cardinal basis: apply the extension
// matrices along the word, leftmost letter first.
std::vector<Rat> pullback_coeffs(const ExtensionTable& ext,
                                 const std::vector<Rat>& h, const Word& w) {
  std::vector<Rat> a = h;
  for (char ch : w) a = mat_vec(ext.A[ch - '0'], a);
  return a;
}

}  // namespace

int EnergyTables::pair_index(int j, int k) const {
  for (size_t p = 0; p < pairs.size(); ++p)
    if (pairs[p].first == j && pairs[p].second == k) return (int)p;
  throw std::runtime_error("pair_index: not a valid boundary pair");
}

EnergyMeasure decompose_pair(const FractalSpec& spec,
                             const std::vector<Rat>& a,
                             const std::vector<Rat>& b) {
  const int n = spec.n_boundary;
  if ((int)a.size() != n || (int)b.size() != n)
    throw std::runtime_error(
        "decompose_pair: coefficient vectors must have boundary length");
  EnergyMeasure nu;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      nu.c.push_back(
          Rat(a[j] * b[k] + a[k] * b[j] - a[j] * b[j] - a[k] * b[k]));
  nu.nonnegative = (a == b);
  return nu;
}

EnergyMeasure kusuoka_measure(const FractalSpec& spec) {
  EnergyMeasure nu;
  nu.c.assign(spec.n_boundary * (spec.n_boundary - 1) / 2, Rat(-2));
  nu.nonnegative = true;
  return nu;
}

std::vector<Rat> sg_basis_convert(const FractalSpec& spec, BasisDirection dir,
                                  const std::vector<Rat>& v) {
  const int n = spec.n_boundary;
  const auto pairs = make_pairs(n);
  // C.at(p, i) = -1 when i belongs to pair p: the image of nu_i.
  Mat<Rat> C((int)pairs.size(), n);
  for (size_t p = 0; p < pairs.size(); ++p) {
    C.at(p, pairs[p].first) = -1;
    C.at(p, pairs[p].second) = -1;
  }
  if (dir == BasisDirection::kPointToPairs) {
    if ((int)v.size() != n)
      throw std::runtime_error(
          "sg_basis_convert: point-basis vector must have boundary length");
    return mat_vec(C, v);
  }
  if (v.size() != pairs.size())
    throw std::runtime_error(
        "sg_basis_convert: pair-basis vector must have one entry per pair");
  bool ok = false;
  std::string reason;
  std::vector<Rat> x = solve_overdetermined(C, v, ok, &reason);
  if (!ok)
    throw std::runtime_error(
        "sg_basis_convert: the point measures do not represent this "
        "measure for this model (" +
        reason + ")");
  return x;
}

EnergyTables build_energy_tables(const FractalSpec& spec,
                                 const ExtensionTable& ext, bool with_basic) {
  const int n = spec.n_boundary;
  EnergyTables t;
  t.pairs = make_pairs(n);
  const int P = (int)t.pairs.size();

  CellGraph g0 = build_graph(spec, 0);
  for (const auto& [j, k] : t.pairs) {
    std::vector<Rat> hj(n, Rat(0)), hk(n, Rat(0));
    hj[j] = 1;
    hk[k] = 1;
    t.pair_mass.push_back(energy_bilinear(g0, hj, hk));
  }

  // (M_i)_{(jk),(lm)}: decompose the pulled-back pair (h_j o F_i, h_k o F_i)
  // in the pair basis and renormalize by 1/r_i.
  for (int i = 0; i < spec.n_maps; ++i) {
    Mat<Rat> Mi(P, P);
    for (int row = 0; row < P; ++row) {
      const auto [j, k] = t.pairs[row];
      std::vector<Rat> a(n), b(n);
      for (int m = 0; m < n; ++m) {
        a[m] = ext.A[i].at(m, j);
        b[m] = ext.A[i].at(m, k);
      }
      EnergyMeasure dec = decompose_pair(spec, a, b);
      for (int col = 0; col < P; ++col)
        Mi.at(row, col) = dec.c[col] / spec.r[i];
    }
    t.M.push_back(std::move(Mi));
  }

  if (!with_basic) {
    t.basic_reason = "the basic-integral solve was not requested";
    return t;
  }

  // Self-similar system for the basic integrals: for every (i, pair),
  //   B[i][jk] = sum_l sum_pq (M_l)_{jk,pq} sum_m A_l(m, i) B[m][pq],
  // plus one normalization row per pair: sum_i B[i][jk] = nu_jk(K).
  const int unknowns = n * P;
  Mat<Rat> sys(unknowns + P, unknowns);
  std::vector<Rat> rhs(unknowns + P, Rat(0));
  for (int i = 0; i < n; ++i) {
    for (int row = 0; row < P; ++row) {
      const int eq = i * P + row;
      sys.at(eq, i * P + row) += 1;
      for (int l = 0; l < spec.n_maps; ++l)
        for (int col = 0; col < P; ++col)
          for (int m = 0; m < n; ++m)
            sys.at(eq, m * P + col) -=
                t.M[l].at(row, col) * ext.A[l].at(m, i);
    }
  }
  for (int row = 0; row < P; ++row) {
    const int eq = unknowns + row;
    for (int i = 0; i < n; ++i) sys.at(eq, i * P + row) = 1;
    rhs[eq] = t.pair_mass[row];
  }
  bool ok = false;
  std::vector<Rat> x = solve_overdetermined(sys, rhs, ok, &t.basic_reason);
  t.basic_ok = ok;
  if (ok) {
    t.B = Mat<Rat>(n, P);
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < P; ++p) t.B.at(i, p) = x[i * P + p];
    // nu_j = -sum_{k != j} nu_jk turns basic integrals into point-measure
    // integrals.
    t.D = Mat<Rat>(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat sum = 0;
        for (int k = 0; k < n; ++k) {
          if (k == j) continue;
          sum += t.B.at(i, t.pair_index(std::min(j, k), std::max(j, k)));
        }
        t.D.at(i, j) = -sum;
      }
  }
  return t;
}

Rat measure_mass(const EnergyTables& t, const EnergyMeasure& nu) {
  if (nu.c.size() != t.pair_mass.size())
    throw std::runtime_error(
        "measure_mass: coefficient count does not match the pair basis");
  Rat mass = 0;
  for (size_t p = 0; p < nu.c.size(); ++p) mass += nu.c[p] * t.pair_mass[p];
  return mass;
}

EnergyMeasure normalize_measure(const EnergyTables& t,
                                const EnergyMeasure& nu) {
  Rat mass = measure_mass(t, nu);
  if (is_zero(mass))
    throw std::runtime_error("normalize_measure: the measure has zero mass");
  EnergyMeasure out = nu;
  for (Rat& x : out.c) x /= mass;
  return out;
}

Mat<Rat> m_word(const EnergyTables& t, const Word& w) {
  Mat<Rat> acc = Mat<Rat>::identity((int)t.pairs.size());
  for (char ch : w) acc = mat_mul(acc, t.M[ch - '0']);
  return acc;
}

namespace {

// Integral over the cell F_w(K) of the harmonic piece whose values at the
// cell's own corners are `local` (equivalently, the coefficients of the
// piece pulled back to level zero).
Rat local_cell_integral(const FractalSpec& spec, const EnergyTables& t,
                        const std::vector<Rat>& local, const Word& w,
                        const EnergyMeasure& nu) {
  if (!t.basic_ok)
    throw std::runtime_error(
        "cell_integral: the basic-integral system was not solvable (" +
        t.basic_reason + ")");
  if (nu.c.size() != t.pairs.size())
    throw std::runtime_error(
        "cell_integral: coefficient count does not match the pair basis");
  std::vector<Rat> v(t.pairs.size(), Rat(0));
  for (size_t p = 0; p < v.size(); ++p)
    for (int m = 0; m < spec.n_boundary; ++m)
      v[p] += local[m] * t.B.at(m, (int)p);
  std::vector<Rat> tv = mat_vec(m_word(t, w), v);
  Rat out = 0;
  for (size_t p = 0; p < tv.size(); ++p) out += nu.c[p] * tv[p];
  return out;
}

}  // namespace

Rat cell_integral(const FractalSpec& spec, const ExtensionTable& ext,
                  const EnergyTables& t, const std::vector<Rat>& h,
                  const Word& w, const EnergyMeasure& nu) {
  return local_cell_integral(spec, t, pullback_coeffs(ext, h, w), w, nu);
}

Rat integrate_spline_energy(const FractalSpec& spec,
                            const ExtensionTable& /*ext*/,
                            const EnergyTables& t, const VertexTable& table,
                            const std::vector<Rat>& values,
                            const EnergyMeasure& nu) {
  if (values.size() != table.verts.size())
    throw std::runtime_error(
        "integrate_spline_energy: value table size does not match the "
        "lattice");
  Rat out = 0;
  std::vector<Rat> corner(spec.n_boundary);
  for (const auto& cell : table.cells) {
    for (int m = 0; m < spec.n_boundary; ++m)
      corner[m] = values[cell.corner[m]];
    // The corner values already describe the piece in its own coordinates,
    // so no pullback happens here.
    out += local_cell_integral(spec, t, corner, cell.word, nu);
  }
  return out;
}

WeightedSampleSet energy_weights(const FractalSpec& spec,
                                 const MultiharmonicTables& mt,
                                 const EnergyTables& t, const SampleSet& E,
                                 const EnergyMeasure& nu,
                                 std::string* warning) {
  if (E.points.empty())
    throw std::runtime_error("energy_weights: sample set is empty");
  if (warning && !nu.nonnegative)
    *warning =
        "the energy measure is not known to be nonnegative; the quadrature "
        "error bounds assume a measure";
  const int m = std::max(E.enclosing_depth, 1);
  CellGraph g = build_graph(spec, m);
  std::vector<int> nodes;
  nodes.reserve(E.points.size());
  for (const VertexId& p : E.points) {
    int idx = g.table.find(p.key());
    if (idx < 0)
      throw std::runtime_error("energy_weights: sample point " + p.key() +
                               " is not on the lattice");
    nodes.push_back(idx);
  }
  Mat<Rat> card = indicator_splines(g.table, g, nodes);
  WeightedSampleSet out;
  out.set = E;
  out.kind = WeightKind::kNatural;
  out.weights.resize(E.points.size());
  out.total = 0;
  std::vector<Rat> column(g.table.verts.size());
  for (size_t j = 0; j < nodes.size(); ++j) {
    for (size_t v = 0; v < column.size(); ++v) column[v] = card.at(v, j);
    out.weights[j] =
        integrate_spline_energy(spec, mt.ext, t, g.table, column, nu);
    out.total += out.weights[j];
  }
  if (out.total != measure_mass(t, nu))
    throw std::runtime_error(
        "energy_weights: weights do not sum to the measure mass");
  return out;
}

}  // namespace fraquad
