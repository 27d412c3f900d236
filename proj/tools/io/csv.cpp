#include "io/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace pseudospec::io {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
    if (text == "nan") return std::nan("");
    if (text == "inf") return HUGE_VAL;
    if (text == "-inf") return -HUGE_VAL;
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::size_t CsvDocument::column_index(std::string_view name) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] == name) return k;
    }
    throw std::invalid_argument("csv: no column '" + std::string(name) + "'");
}

std::vector<double> CsvDocument::numeric_column(std::string_view name) const {
    const std::size_t k = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(parse_number(row.at(k)));
    return out;
}

namespace {

void append_row(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k > 0) out += ',';
        out += cells[k];
    }
    out += '\n';
}

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        cells.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

std::string to_csv(const CsvDocument& doc) {
    std::string out;
    out += "# schema: " + doc.schema + '\n';
    out += "# config: " + doc.config + '\n';
    append_row(out, doc.header);
    for (const auto& row : doc.rows) append_row(out, row);
    return out;
}

CsvDocument parse_csv(std::string_view text) {
    CsvDocument doc;
    bool have_header = false;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.front() == '#') {
            constexpr std::string_view schema = "# schema: ";
            constexpr std::string_view config = "# config: ";
            if (line.substr(0, schema.size()) == schema) doc.schema = line.substr(schema.size());
            if (line.substr(0, config.size()) == config) doc.config = line.substr(config.size());
            continue;
        }
        if (!have_header) {
            doc.header = split(line);
            have_header = true;
            continue;
        }
        auto cells = split(line);
        if (cells.size() != doc.header.size()) throw std::invalid_argument("csv: ragged row");
        doc.rows.push_back(std::move(cells));
    }
    if (!have_header) throw std::invalid_argument("csv: missing header row");
    return doc;
}

}  // namespace pseudospec::io
