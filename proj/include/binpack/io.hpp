#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "binpack/core.hpp"

namespace binpack {

/// Instance text format: one size per line as "p/q" or a decimal literal.
/// Blank lines and lines starting with '#' are ignored. Parse failures raise
/// ParseError carrying the 1-based line number.
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::filesystem::path& path);

/// Writes sizes as "p/q" lines, preceded by '#' comment lines for metadata.
void write_instance(std::ostream& out, const Instance& instance);

/// {"assignment":[1,1,2], "k":null}
nlohmann::json packing_to_json(const Packing& packing);
Packing packing_from_json(const nlohmann::json& j);

/// Rational parameters serialize as "p/q" strings.
nlohmann::json params_to_json(const ParamMap& params);
ParamMap params_from_json(const nlohmann::json& j);

}  // namespace binpack
