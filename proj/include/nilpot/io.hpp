#pragma once

#include "nilpot/quotient.hpp"

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace nilpot {

using ordered_json = nlohmann::ordered_json;

// LieElement exchange format: {"n":..,"c":..,"terms":[["word","p/q"],...]}
ordered_json lie_to_json(const LieElement &u);
LieElement lie_from_json(const HallBasis &basis, const ordered_json &j);

// Quotient description export:
// {"ambient":{"n","c"},"ideal_rank":..,"adapted_basis":[words],"relations":[[pivot,terms]..]}
ordered_json quotient_to_json(const QuotientAlgebra &q);

// Structure-constant cache, one file per (n,c):
// {"format":1,"n":..,"c":..,"basis":[{"word":..,"bracketing":[i,j]}..],
//  "table":{"i,j":[[index,"p/q"]..]}}
ordered_json table_to_json(const HallBasis &basis, const StructureTable &table);
StructureTable table_from_json(const HallBasis &basis, const ordered_json &j);

// Resolution order: explicit dir, then NILPOT_CACHE, then the platform cache
// directory ($XDG_CACHE_HOME/nilpot or ~/.cache/nilpot); nullopt disables caching.
std::optional<std::filesystem::path> resolve_cache_dir(
    const std::optional<std::filesystem::path> &explicit_dir);

std::filesystem::path cache_file_path(const std::filesystem::path &dir, int n, int c);

// Build the table, consulting/populating the cache when a directory is given.
// Loaded tables are certified (Jacobi sample) before use.
StructureTable build_structure_table_cached(const HallBasis &basis,
                                            const std::optional<std::filesystem::path> &dir,
                                            TableEngine engine = TableEngine::Auto);

} // namespace nilpot
