#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

namespace wavesym {

/// Deterministic JSON text: keys sorted, two-space indent, doubles with 17
/// significant digits, non-finite doubles as null.
void write_json(std::ostream& os, const nlohmann::json& value);
std::string to_json_text(const nlohmann::json& value);

}  // namespace wavesym
