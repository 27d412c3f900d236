#pragma once

#include <string>

#include "json.hpp"

namespace pseudospec::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// {"schema": ..., "schema_version": 1, "config": ...}
[[nodiscard]] Json envelope(const std::string& schema, const Json& config);

/// Non-finite values become the strings "inf", "-inf", "nan".
[[nodiscard]] Json number(double value);

/// Inverse of number().
[[nodiscard]] double read_number(const Json& value);

/// Two-space indent, sorted keys, trailing newline.
[[nodiscard]] std::string dump(const Json& doc);

}  // namespace pseudospec::io
