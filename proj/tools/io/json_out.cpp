#include "io/json_out.hpp"

#include <cmath>

#include "io/csv.hpp"

namespace pseudospec::io {

Json envelope(const std::string& schema, const Json& config) {
    Json doc;
    doc["schema"] = schema;
    doc["schema_version"] = kSchemaVersion;
    doc["config"] = config;
    return doc;
}

Json number(double value) {
    if (std::isfinite(value)) return value;
    return format_number(value);
}

double read_number(const Json& value) {
    if (value.is_string()) return parse_number(value.get<std::string>());
    return value.get<double>();
}

std::string dump(const Json& doc) { return doc.dump(2) + '\n'; }

}  // namespace pseudospec::io
