// fraquad — on-disk formats: sample-set and value CSVs, energy-measure
// descriptions, and the versioned JSON report envelope used by the CLI.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fraquad/address.hpp"
#include "fraquad/energy_measure.hpp"
#include "fraquad/rational.hpp"
#include "fraquad/spec.hpp"

namespace fraquad {

/// Version tag stamped into every JSON report.
inline constexpr const char* kReportSchema = "fraquad-report/1";

std::string slurp_file(const std::string& path);
void spit_file(const std::string& path, const std::string& text);

/// Sample-set CSV: one address per row ("w:n"), an optional "vertex" header,
/// '#' comments and blank rows skipped.  Addresses are validated and
/// canonicalized on load; duplicate rows collapse.
SampleSet load_sample_set_csv(const FractalSpec& spec, const std::string& text);

/// Value CSV with an optional vertex,value header: rows "w:n,p/q".  Keys are
/// canonicalized; values must be decimal-free rationals.
std::vector<std::pair<std::string, Rat>> load_values_csv(
    const FractalSpec& spec, const std::string& text);

/// Align loaded values with the points of a sample set (exact cover: every
/// point valued once, no strays).
std::vector<Rat> values_on_set(
    const SampleSet& set,
    const std::vector<std::pair<std::string, Rat>>& pairs);

/// Energy-measure description, either pair-basis coefficients
///   {"basis":"jk","coeffs":[[j,k,"p/q"],...]}
/// or the product measure of two harmonic functions by boundary values
///   {"pair":{"h":["p/q",...],"H":["p/q",...]}}.
EnergyMeasure load_energy_measure_json(const FractalSpec& spec,
                                       const std::string& text);

/// {"ratio":"p/q","decimal":"..."} — report numerics carry both forms.
nlohmann::json rat_json(const Rat& x);

/// Accepts the rat_json object or a bare "p/q" string.
Rat rat_from_json(const nlohmann::json& j);

/// Report envelope: schema/kind/spec fields merged over the body.
nlohmann::json make_report(const std::string& kind, const FractalSpec& spec,
                           nlohmann::json body);

/// Minimal CSV writer ("\n" endings, cells emitted verbatim).
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

}  // namespace fraquad
