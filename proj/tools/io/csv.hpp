#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pseudospec::io {

/// Shortest decimal that parses back to the same double ("inf", "-inf",
/// "nan" for non-finite values). Locale independent.
[[nodiscard]] std::string format_number(double value);

/// Exact inverse of format_number. Throws std::invalid_argument on junk.
[[nodiscard]] double parse_number(std::string_view text);

/// Leading "# schema: ..." and "# config: ..." comment lines, one header
/// row, then data rows. Cells never contain commas or quotes.
struct CsvDocument {
    std::string schema;
    std::string config;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column_index(std::string_view name) const;
    [[nodiscard]] std::vector<double> numeric_column(std::string_view name) const;
};

[[nodiscard]] std::string to_csv(const CsvDocument& doc);
[[nodiscard]] CsvDocument parse_csv(std::string_view text);

}  // namespace pseudospec::io
