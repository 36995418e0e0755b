#pragma once

#include "json.hpp"

#include <cstdint>
#include <string>

#include "pbe/aham.hpp"
#include "pbe/bounds.hpp"
#include "pbe/fvm.hpp"
#include "pbe/hopt.hpp"

namespace pbe {

// Fixed 9-significant-digit formatting; keeps emitted tables byte-identical
// across runs.
std::string format_double(double v);

// FNV-1a, for config hashes in table headers.
std::uint64_t fnv1a(const std::string& text);

nlohmann::json to_json(const ExpPoly& f);
nlohmann::json to_json(const TimeField& f);
nlohmann::json to_json(const SeriesSolution& sol);
nlohmann::json to_json(const OptimizeResult& result);
nlohmann::json to_json(const BoundReport& report);

ExpPoly expoly_from_json(const nlohmann::json& j);
TimeField timefield_from_json(const nlohmann::json& j);
SeriesSolution series_from_json(const nlohmann::json& j);

// CSV with columns s, density.
std::string to_csv(const CellSolution& cells);

}  // namespace pbe
