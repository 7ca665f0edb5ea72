// fraquad — built-in fractal models, JSON (de)serialization, validation.
// SPDX-License-Identifier: MIT
#include "fraquad/spec.hpp"

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "fraquad/address.hpp"
#include "json.hpp"

namespace fraquad {

using nlohmann::json;

namespace {

FractalSpec make_base(const std::string& name, int n_maps, int n_boundary,
                      const Rat& r, const Rat& mu) {
  FractalSpec s;
  s.name = name;
  s.n_maps = n_maps;
  s.n_boundary = n_boundary;
  s.r.assign(n_maps, r);
  s.mu.assign(n_maps, mu);
  s.c.assign(n_boundary, std::vector<Rat>(n_boundary, Rat(0)));
  for (int j = 0; j < n_boundary; ++j)
    for (int k = 0; k < n_boundary; ++k)
      if (j != k) s.c[j][k] = Rat(1);
  return s;
}

/// n pairwise-touching half-scale contractions on the (n-1)-simplex:
/// F_i q_j = F_j q_i for i != j; r = n/(n+2), mu = 1/n.
FractalSpec make_nhedron(int n, const std::string& name) {
  FractalSpec s = make_base(name, n, n, rat(n, n + 2), rat(1, n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      s.identifications.push_back({Addr1{i, j}, Addr1{j, i}});
  return s;
}

/// Planar embedding from boundary coordinates for ratio-1/2 corner maps:
/// F_i(x) = (x + q_i)/2.
Embedding half_scale_embedding(const std::vector<std::array<Rat, 2>>& q) {
  Embedding e;
  e.q = q;
  for (const auto& qi : q) {
    AffineMap m;
    m.A[0][0] = Rat(1, 2);
    m.A[1][1] = Rat(1, 2);
    m.t = {qi[0] / 2, qi[1] / 2};
    e.maps.push_back(m);
  }
  return e;
}

}  // namespace

FractalSpec builtin_spec(const std::string& id) {
  if (id == "interval") {
    FractalSpec s = make_base("interval", 2, 2, Rat(1, 2), Rat(1, 2));
    s.identifications.push_back({Addr1{0, 1}, Addr1{1, 0}});
    Embedding e;
    e.q = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}};
    AffineMap m0, m1;
    m0.A[0][0] = Rat(1, 2);
    m0.A[1][1] = Rat(1, 2);
    m1 = m0;
    m1.t = {Rat(1, 2), Rat(0)};
    e.maps = {m0, m1};
    s.embedding = e;
    return s;
  }
  if (id == "sg") {
    FractalSpec s = make_nhedron(3, "sg");
    s.r.assign(3, Rat(3, 5));
    s.embedding = half_scale_embedding(
        {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1, 2), Rat(7, 8)}});
    return s;
  }
  if (id == "st") {
    FractalSpec s = make_nhedron(4, "st");
    s.r.assign(4, Rat(2, 3));
    // planar projection of the tetrahedron (plot only; cells overlap)
    s.embedding = half_scale_embedding({{Rat(0), Rat(0)},
                                        {Rat(1), Rat(0)},
                                        {Rat(1, 2), Rat(7, 8)},
                                        {Rat(1, 2), Rat(3, 8)}});
    return s;
  }
  if (id == "sg3") {
    // level-3 gasket: three 1/3-scale corner cells F_0,F_1,F_2 and three
    // 1/3-scale side cells F_3,F_4,F_5 (labels "(01)","(02)","(12)");
    // the side cells meet at one center point F_3 q_2 = F_4 q_1 = F_5 q_0.
    FractalSpec s = make_base("sg3", 6, 3, Rat(7, 15), Rat(1, 6));
    s.labels = {"0", "1", "2", "(01)", "(02)", "(12)"};
    s.identifications = {
        {Addr1{0, 1}, Addr1{3, 0}}, {Addr1{3, 1}, Addr1{1, 0}},
        {Addr1{0, 2}, Addr1{4, 0}}, {Addr1{4, 2}, Addr1{2, 0}},
        {Addr1{1, 2}, Addr1{5, 1}}, {Addr1{5, 2}, Addr1{2, 1}},
        {Addr1{3, 2}, Addr1{4, 1}}, {Addr1{4, 1}, Addr1{5, 0}},
    };
    Embedding e;
    e.q = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    const Rat third(1, 3);
    const std::array<std::array<Rat, 2>, 6> trans = {{{Rat(0), Rat(0)},
                                                      {Rat(2, 3), Rat(0)},
                                                      {Rat(0), Rat(2, 3)},
                                                      {Rat(1, 3), Rat(0)},
                                                      {Rat(0), Rat(1, 3)},
                                                      {Rat(1, 3), Rat(1, 3)}}};
    for (int i = 0; i < 6; ++i) {
      AffineMap m;
      m.A[0][0] = third;
      m.A[1][1] = third;
      m.t = trans[i];
      e.maps.push_back(m);
    }
    s.embedding = e;
    return s;
  }
  if (id.rfind("nhedron:", 0) == 0) {
    int n = std::stoi(id.substr(8));
    if (n < 2 || n > 100) throw std::runtime_error("nhedron:<n> needs 2<=n<=100");
    return make_nhedron(n, id);
  }
  throw std::runtime_error("unknown builtin spec: " + id);
}

FractalSpec resolve_spec(const std::string& arg) {
  if (arg.rfind("builtin:", 0) == 0) return builtin_spec(arg.substr(8));
  return load_spec_json(arg);
}

namespace {

Rat rat_from_json(const json& j) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw std::runtime_error("rational fields must be \"p/q\" strings or ints");
}

}  // namespace

FractalSpec load_spec_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  json j = json::parse(in);
  FractalSpec s;
  s.name = path;
  s.n_maps = j.at("n_maps").get<int>();
  s.n_boundary = j.at("n_boundary").get<int>();
  for (const auto& v : j.at("r")) s.r.push_back(rat_from_json(v));
  for (const auto& v : j.at("mu")) s.mu.push_back(rat_from_json(v));
  s.c.assign(s.n_boundary, std::vector<Rat>(s.n_boundary, Rat(0)));
  for (const auto& e : j.at("conductances")) {
    int a = e.at(0).get<int>(), b = e.at(1).get<int>();
    Rat v = rat_from_json(e.at(2));
    s.c.at(a).at(b) = v;
    s.c.at(b).at(a) = v;
  }
  if (j.contains("identifications"))
    for (const auto& e : j.at("identifications"))
      s.identifications.push_back(
          {Addr1{e.at(0).at(0).get<int>(), e.at(0).at(1).get<int>()},
           Addr1{e.at(1).at(0).get<int>(), e.at(1).at(1).get<int>()}});
  if (j.contains("labels"))
    for (const auto& e : j.at("labels")) s.labels.push_back(e.get<std::string>());
  if (j.contains("embedding")) {
    Embedding emb;
    for (const auto& p : j.at("embedding").at("q"))
      emb.q.push_back({rat_from_json(p.at(0)), rat_from_json(p.at(1))});
    for (const auto& m : j.at("embedding").at("maps")) {
      AffineMap am;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) am.A[r][c] = rat_from_json(m.at("A").at(r).at(c));
      am.t = {rat_from_json(m.at("t").at(0)), rat_from_json(m.at("t").at(1))};
      emb.maps.push_back(am);
    }
    s.embedding = emb;
  }
  return s;
}

std::string spec_to_json(const FractalSpec& s) {
  json j;
  j["n_maps"] = s.n_maps;
  j["n_boundary"] = s.n_boundary;
  json r = json::array(), mu = json::array();
  for (const auto& v : s.r) r.push_back(rat_str(v));
  for (const auto& v : s.mu) mu.push_back(rat_str(v));
  j["r"] = r;
  j["mu"] = mu;
  json cond = json::array();
  for (int a = 0; a < s.n_boundary; ++a)
    for (int b = a + 1; b < s.n_boundary; ++b)
      if (!is_zero(s.c[a][b])) cond.push_back({a, b, rat_str(s.c[a][b])});
  j["conductances"] = cond;
  json ids = json::array();
  for (const auto& [x, y] : s.identifications)
    ids.push_back({{x.i, x.n}, {y.i, y.n}});
  j["identifications"] = ids;
  if (!s.labels.empty()) j["labels"] = s.labels;
  if (s.embedding) {
    json emb;
    json q = json::array();
    for (const auto& p : s.embedding->q)
      q.push_back(json::array({rat_str(p[0]), rat_str(p[1])}));
    emb["q"] = q;
    json maps = json::array();
    for (const auto& m : s.embedding->maps) {
      json jm;
      jm["A"] = json::array(
          {json::array({rat_str(m.A[0][0]), rat_str(m.A[0][1])}),
           json::array({rat_str(m.A[1][0]), rat_str(m.A[1][1])})});
      jm["t"] = json::array({rat_str(m.t[0]), rat_str(m.t[1])});
      maps.push_back(jm);
    }
    emb["maps"] = maps;
    j["embedding"] = emb;
  }
  return j.dump(2) + "\n";
}

ValidationReport validate_spec(const FractalSpec& spec) {
  ValidationReport rep;
  auto fail = [&](const std::string& msg) {
    rep.pass = false;
    rep.errors.push_back(msg);
  };

  if (spec.n_maps <= 0) fail("n_maps must be positive");
  if (spec.n_boundary <= 0 || spec.n_boundary > spec.n_maps)
    fail("n_boundary must satisfy 0 < N0 <= N");
  if ((int)spec.r.size() != spec.n_maps) fail("r must list one factor per map");
  if ((int)spec.mu.size() != spec.n_maps)
    fail("mu must list one weight per map");
  if (!rep.pass) return rep;

  for (int i = 0; i < spec.n_maps; ++i) {
    if (!(sgn(spec.mu[i]) > 0)) fail("measure weights must be positive");
    if (!(sgn(spec.r[i]) > 0 && spec.r[i] < 1))
      fail("resistance factors must satisfy 0 < r_i < 1");
  }
  Rat total = std::accumulate(spec.mu.begin(), spec.mu.end(), Rat(0));
  if (total != 1) fail("measure weights do not sum to 1");

  if ((int)spec.c.size() != spec.n_boundary)
    fail("conductance table must be N0 x N0");
  bool any_edge = false;
  for (int a = 0; a < (int)spec.c.size(); ++a)
    for (int b = 0; b < (int)spec.c[a].size(); ++b) {
      if (spec.c[a][b] != spec.c[b][a]) fail("conductances must be symmetric");
      if (sgn(spec.c[a][b]) < 0) fail("conductances must be nonnegative");
      if (a != b && sgn(spec.c[a][b]) > 0) any_edge = true;
    }
  if (!any_edge) fail("boundary energy form has no edges");

  for (const auto& [x, y] : spec.identifications) {
    if (x.i < 0 || x.i >= spec.n_maps || y.i < 0 || y.i >= spec.n_maps ||
        x.n < 0 || x.n >= spec.n_boundary || y.n < 0 || y.n >= spec.n_boundary)
      fail("identification indices out of range");
    if (x == y) fail("identification glues an address to itself");
  }
  if (!rep.pass) return rep;

  // Level-1 structural checks via the class/graph machinery.
  Level1Classes l1 = level1_classes(spec);
  VertexTable v1 = enumerate_vertices(spec, 1);

  // connectivity of Gamma_1
  {
    std::vector<std::vector<int>> adj(v1.verts.size());
    for (const auto& cell : v1.cells)
      for (int a = 0; a < spec.n_boundary; ++a)
        for (int b = a + 1; b < spec.n_boundary; ++b)
          if (sgn(spec.c[a][b]) > 0) {
            adj[cell.corner[a]].push_back(cell.corner[b]);
            adj[cell.corner[b]].push_back(cell.corner[a]);
          }
    std::vector<bool> seen(v1.verts.size(), false);
    std::vector<int> stack = {0};
    seen[0] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
    }
    for (size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) {
        fail("Gamma_1 is disconnected (vertex " + v1.verts[i].key +
             " unreachable)");
        break;
      }
  }

  // every interior level-1 vertex must lie in at least two 1-cells;
  // a multiplicity-1 junction is a dangling image, e.g. a missing center
  // identification
  for (size_t v = 0; v < v1.verts.size(); ++v) {
    bool is_boundary = false;
    for (int b : v1.boundary_idx) is_boundary |= (b == (int)v);
    if (!is_boundary && v1.eta[v] < 2)
      fail("interior level-1 vertex " + v1.verts[v].key +
           " has cell multiplicity " + std::to_string(v1.eta[v]) +
           " < 2 (dangling junction; identification missing?)");
  }

  // boundary points: q_k fixed by F_k, in exactly one cell unless identified
  for (int k = 0; k < spec.n_boundary; ++k) {
    int cls = l1.id(k, k, spec.n_boundary);
    if ((int)l1.members[cls].size() == 1 && v1.eta[v1.boundary_idx[k]] != 1)
      fail("boundary point q_" + std::to_string(k) +
           " lies in more than one cell without an identification");
  }

  // embedding consistency: identified addresses must coincide geometrically
  if (spec.embedding) {
    const Embedding& e = *spec.embedding;
    if ((int)e.q.size() != spec.n_boundary ||
        (int)e.maps.size() != spec.n_maps) {
      fail("embedding must give coordinates for every q_k and every map");
    } else {
      auto apply = [&](int i, const std::array<Rat, 2>& x) {
        const AffineMap& m = e.maps[i];
        return std::array<Rat, 2>{
            m.A[0][0] * x[0] + m.A[0][1] * x[1] + m.t[0],
            m.A[1][0] * x[0] + m.A[1][1] * x[1] + m.t[1]};
      };
      for (int k = 0; k < spec.n_boundary; ++k) {
        auto img = apply(k, e.q[k]);
        if (img != e.q[k])
          rep.warnings.push_back("embedding: q_" + std::to_string(k) +
                                 " is not the fixed point of map " +
                                 std::to_string(k));
      }
      for (const auto& [x, y] : spec.identifications) {
        auto px = apply(x.i, e.q[x.n]);
        auto py = apply(y.i, e.q[y.n]);
        if (px != py)
          rep.warnings.push_back(
              "embedding: identified addresses have different coordinates");
      }
    }
  }

  return rep;
}

}  // namespace fraquad
