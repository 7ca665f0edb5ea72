// fraquad — readers and writers for the CLI file formats.
// SPDX-License-Identifier: MIT
#include "fraquad/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fraquad {

using nlohmann::json;

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
  if (!out) throw std::runtime_error("short write: " + path);
}

namespace {

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> data_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trimmed(line);
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(line);
  }
  return rows;
}

}  // namespace

SampleSet load_sample_set_csv(const FractalSpec& spec,
                              const std::string& text) {
  std::vector<std::pair<Word, int>> raw;
  for (const std::string& row : data_rows(text)) {
    if (row == "vertex") continue;  // header
    Word w;
    int n = 0;
    if (!parse_vertex_key(row, w, n))
      throw std::runtime_error("sample-set row is not a vertex address: " +
                               row);
    raw.emplace_back(w, n);
  }
  if (raw.empty()) throw std::runtime_error("sample-set file has no rows");
  return make_sample_set(spec, raw, /*dedupe=*/true);
}

std::vector<std::pair<std::string, Rat>> load_values_csv(
    const FractalSpec& spec, const std::string& text) {
  std::vector<std::pair<std::string, Rat>> out;
  std::map<std::string, Rat> seen;
  for (const std::string& row : data_rows(text)) {
    if (row == "vertex,value") continue;  // header
    size_t comma = row.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("value row needs a vertex,value pair: " + row);
    std::string key = trimmed(row.substr(0, comma));
    std::string val = trimmed(row.substr(comma + 1));
    Word w;
    int n = 0;
    if (!parse_vertex_key(key, w, n))
      throw std::runtime_error("value row is not a vertex address: " + key);
    std::string canon = canonicalize(spec, w, n).key();
    Rat v = rat_parse(val);
    auto it = seen.find(canon);
    if (it != seen.end()) {
      if (it->second != v)
        throw std::runtime_error("value file assigns two values to " + canon);
      continue;
    }
    seen.emplace(canon, v);
    out.emplace_back(canon, v);
  }
  return out;
}

std::vector<Rat> values_on_set(
    const SampleSet& set,
    const std::vector<std::pair<std::string, Rat>>& pairs) {
  std::map<std::string, Rat> by_key(pairs.begin(), pairs.end());
  std::vector<Rat> out;
  out.reserve(set.points.size());
  for (const VertexId& x : set.points) {
    auto it = by_key.find(x.key());
    if (it == by_key.end())
      throw std::runtime_error("no value for sample point " + x.key());
    out.push_back(it->second);
    by_key.erase(it);
  }
  if (!by_key.empty())
    throw std::runtime_error("value for " + by_key.begin()->first +
                             " matches no sample point");
  return out;
}

EnergyMeasure load_energy_measure_json(const FractalSpec& spec,
                                       const std::string& text) {
  json j = json::parse(text);
  const int nb = spec.n_boundary;
  if (j.contains("basis")) {
    if (j.at("basis").get<std::string>() != "jk")
      throw std::runtime_error("energy-measure basis must be \"jk\"");
    EnergyMeasure nu;
    nu.c.assign(static_cast<size_t>(nb) * (nb - 1) / 2, Rat(0));
    std::vector<bool> set_flag(nu.c.size(), false);
    for (const json& entry : j.at("coeffs")) {
      if (!entry.is_array() || entry.size() != 3)
        throw std::runtime_error(
            "energy-measure coefficient rows are [j,k,\"p/q\"]");
      int a = entry[0].get<int>();
      int b = entry[1].get<int>();
      if (a < 0 || b <= a || b >= nb)
        throw std::runtime_error(
            "energy-measure pair indices must satisfy 0 <= j < k < " +
            std::to_string(nb));
      // index of (a,b) in the lexicographic pair list
      size_t p = 0;
      for (int s = 0; s < a; ++s) p += static_cast<size_t>(nb - 1 - s);
      p += static_cast<size_t>(b - a - 1);
      if (set_flag[p])
        throw std::runtime_error("energy-measure pair listed twice");
      set_flag[p] = true;
      nu.c[p] = rat_parse(entry[2].get<std::string>());
    }
    return nu;
  }
  if (j.contains("pair")) {
    const json& pr = j.at("pair");
    auto coeffs = [&](const char* name) {
      const json& arr = pr.at(name);
      if (!arr.is_array() || static_cast<int>(arr.size()) != nb)
        throw std::runtime_error(std::string("energy-measure \"") + name +
                                 "\" needs one boundary value per vertex");
      std::vector<Rat> v;
      for (const json& x : arr) v.push_back(rat_parse(x.get<std::string>()));
      return v;
    };
    return decompose_pair(spec, coeffs("h"), coeffs("H"));
  }
  throw std::runtime_error(
      "energy-measure file needs either \"basis\" or \"pair\"");
}

json rat_json(const Rat& x) {
  return json{{"ratio", rat_str(x)}, {"decimal", decimal_str(x)}};
}

Rat rat_from_json(const json& j) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_object() && j.contains("ratio"))
    return rat_parse(j.at("ratio").get<std::string>());
  throw std::runtime_error("expected a rational (\"p/q\" or {ratio,...})");
}

json make_report(const std::string& kind, const FractalSpec& spec,
                 json body) {
  json out;
  out["schema"] = kReportSchema;
  out["kind"] = kind;
  out["spec"] = spec.name;
  for (auto& [key, value] : body.items()) out[key] = std::move(value);
  return out;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

}  // namespace fraquad
