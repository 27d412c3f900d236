#include "doctest.h"

#include <bit>
#include <cmath>
#include <filesystem>
#include <limits>

#include "io/atomic_file.hpp"
#include "io/csv.hpp"
#include "io/json_out.hpp"
#include "io/svg.hpp"
#include "pseudospec/rng.hpp"

using namespace pseudospec;
using namespace pseudospec::io;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "pseudospec_io_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_number round-trips bit-exactly") {
    std::vector<double> values{0.0, -0.0, 0.1, 1.0 / 3.0, 1e-300, 5e-324, 1.7976931348623157e308, -2.5, 123456789.0};
    SplitMix64 rng(3);
    for (int k = 0; k < 2000; ++k) values.push_back(std::bit_cast<double>(rng.next()));
    for (double v : values) {
        if (std::isnan(v)) continue;
        const std::string s = format_number(v);
        CHECK(s.find(',') == std::string::npos);
        CHECK(std::bit_cast<std::uint64_t>(parse_number(s)) == std::bit_cast<std::uint64_t>(v));
    }
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(parse_number("inf") == std::numeric_limits<double>::infinity());
    CHECK(std::isnan(parse_number("nan")));
    CHECK_THROWS_AS((void)parse_number("1.5x"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_number(""), std::invalid_argument);
}

TEST_CASE("CSV documents round-trip") {
    CsvDocument doc;
    doc.schema = "pseudospec.test/1";
    doc.config = R"({"N":200,"c":{"im":5,"re":1}})";
    doc.header = {"a", "b"};
    SplitMix64 rng(5);
    for (int k = 0; k < 50; ++k) doc.rows.push_back({format_number(rng.uniform(-1e3, 1e3)), format_number(rng.uniform())});
    doc.rows.push_back({"inf", "nan"});

    const std::string text = to_csv(doc);
    CHECK(text.rfind("# schema: pseudospec.test/1\n", 0) == 0);
    const CsvDocument back = parse_csv(text);
    CHECK(back.schema == doc.schema);
    CHECK(back.config == doc.config);
    CHECK(back.header == doc.header);
    CHECK(back.rows == doc.rows);
    CHECK(back.column_index("b") == 1);
    const auto a = back.numeric_column("a");
    for (std::size_t k = 0; k < doc.rows.size(); ++k) CHECK(a[k] == parse_number(doc.rows[k][0]));
    CHECK(to_csv(back) == text);
}

TEST_CASE("JSON numbers and envelope") {
    const Json env = envelope("pseudospec.x", Json{{"seed", 42}});
    CHECK(env["schema"] == "pseudospec.x");
    CHECK(env["schema_version"] == kSchemaVersion);
    CHECK(env["config"]["seed"] == 42);

    for (double v : {0.1, -3e-200, 2.0 / 3.0, std::numeric_limits<double>::infinity()}) {
        Json doc{{"v", number(v)}};
        const Json back = Json::parse(dump(doc));
        CHECK(read_number(back["v"]) == v);
    }
    CHECK(std::isnan(read_number(Json::parse(dump(Json{{"v", number(std::nan(""))}}))["v"])));
    const std::string text = dump(Json{{"b", 1}, {"a", 2}});
    CHECK(text.back() == '\n');
    CHECK(text.find("\"a\"") < text.find("\"b\""));
}

TEST_CASE("SVG output is self-contained and escaped") {
    SvgPlot plot("title <&>", "Re z", "Im z", {0.0, 10.0}, {-1.0, 1.0});
    plot.line({{0, 0}, {5, 0.5}, {10, -1}}, "#1f77b4");
    plot.markers({{2, 0.1}}, "black", 3.0, true);
    plot.legend("level 1e-3", "#1f77b4");
    plot.set_metadata("config: {\"a\":1}");
    const std::string svg = plot.render();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("title &lt;&amp;&gt;") != std::string::npos);
    CHECK(svg.find("<metadata>") != std::string::npos);
    CHECK(svg.find("clipPath") != std::string::npos);
    CHECK(svg.find("href=\"http") == std::string::npos);
    CHECK(svg == plot.render());
    CHECK(xml_escape("a\"b") == "a&quot;b");
}

TEST_CASE("nice_ticks") {
    const auto t = nice_ticks({0.0, 120.0});
    REQUIRE(!t.empty());
    CHECK(t.front() >= 0.0);
    CHECK(t.back() <= 120.0);
    for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] - t[k - 1] == doctest::Approx(t[1] - t[0]));
    CHECK(t[1] - t[0] == doctest::Approx(20.0));
}

TEST_CASE("atomic write replaces the file and leaves no temporary") {
    const auto path = scratch("atomic.txt");
    write_file_atomic(path, "first");
    write_file_atomic(path, "second\n");
    CHECK(read_file(path) == "second\n");
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    CHECK_THROWS((void)read_file(scratch("missing.txt")));
    CHECK_THROWS(write_file_atomic(scratch("no_dir") / "x" / "y.txt", "z"));
}

}  // TEST_SUITE
