#pragma once

#include <string>

#include "json.hpp"

namespace qlg::cli {

/// Plain-text rendering: objects as aligned key/value lines, arrays of
/// objects as a column table, anything nested as compact JSON.
std::string render_table(const nlohmann::ordered_json& j);

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

}  // namespace qlg::cli
