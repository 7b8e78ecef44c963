#pragma once

#include <pcoh/algebra.hpp>
#include <pcoh/cochain.hpp>
#include <pcoh/cohomology.hpp>
#include <pcoh/complexes.hpp>
#include <pcoh/deformation.hpp>

#include <nlohmann/json.hpp>

#include <string>

namespace pcoh {

using Json = nlohmann::json;

/// Rationals are written as reduced "p/q" or "p" strings. Reading also
/// accepts JSON integers; anything else is a StructureError.
Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& j);

Json constants_to_json(const StructureConstants& constants);
StructureConstants constants_from_json(const Json& j);

/// {"name"?, "dim", "basis", "unit", "mult", "bracket"}
Json algebra_to_json(const AlgebraSpec& spec);
AlgebraSpec algebra_from_json(const Json& j);

/// {"name"?, "dim", "basis"?, "left", "right", "lie", "flavor"} with flavor
/// "poisson" or "quasi-poisson".
Json module_to_json(const ModuleSpec& spec);
ModuleSpec module_from_json(const Json& j);

/// {"theory", "degree", "components": [{"i", "j", "coords"}]}
Json cochain_to_json(const Cochain& cochain);
/// d and m must be supplied because the JSON only carries coordinates.
Cochain cochain_from_json(const Json& j, std::size_t d, std::size_t m);

/// {"algebra": "builtin:NAME" or inline algebra, "order", "m_terms",
/// "l_terms"}; each term is a list of [i, j, k, "p/q"] entries.
Json series_to_json(const DeformationSeries& series, const std::string& algebra_ref = "");
DeformationSeries series_from_json(const Json& j, const std::string& base_dir = ".");

Json bilinear_to_json(const BilinearMap& map);
BilinearMap bilinear_from_json(const Json& j, std::size_t in_dim, std::size_t out_dim);

Json report_to_json(const CohomologyReport& report);
Json check_report_to_json(const DeformationCheckReport& report);
Json validation_to_json(const ValidationReport& report);
Json les_to_json(const LesReport& report);
Json decomposition_to_json(const DecompositionReport& report);
Json quantization_to_json(const QuantizationReport& report);

/// Block layout and sign convention of a slice, written next to a matrix
/// dump.
Json slice_sidecar(const ComplexSlice& slice);

/// "builtin:NAME", "file:PATH" or a bare path. Relative paths are resolved
/// against base_dir.
AlgebraSpec load_algebra(const std::string& source, const std::string& base_dir = ".");
ModuleSpec load_module(const std::string& source, const std::string& base_dir = ".");
DeformationSeries load_series(const std::string& source, const std::string& base_dir = ".");

Json read_json_file(const std::string& path);

}  // namespace pcoh
