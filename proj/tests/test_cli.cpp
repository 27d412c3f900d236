#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "io/atomic_file.hpp"
#include "io/csv.hpp"
#include "io/json_out.hpp"

namespace fs = std::filesystem;
using pseudospec::io::Json;

namespace {

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "pseudospec_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const fs::path& dir, const std::string& args) {
    const std::string cmd = "cd '" + dir.string() + "' && '" PSEUDOSPEC_CLI_PATH "' " + args + " > log.txt 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) { return pseudospec::io::read_file(p); }
Json json_at(const fs::path& p) { return Json::parse(slurp(p)); }

bool same_outputs(const fs::path& a, const fs::path& b, const std::string& base) {
    for (const char* ext : {".csv", ".json", ".svg"}) {
        const bool ea = fs::exists(a / (base + ext));
        if (ea != fs::exists(b / (base + ext))) return false;
        if (ea && slurp(a / (base + ext)) != slurp(b / (base + ext))) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("spectrum with real c gives the odd integers and reads back") {
    const auto dir = fresh_dir("spectrum_real");
    REQUIRE(run_cli(dir, "spectrum --c-im 0 --N 80 --L 8 --count 10 --out s") == 0);
    const auto doc = pseudospec::io::parse_csv(slurp(dir / "s.csv"));
    CHECK(doc.schema == "pseudospec.spectrum.v1");
    const auto re = doc.numeric_column("re");
    const auto rel = doc.numeric_column("rel_error");
    REQUIRE(re.size() == 10);
    for (int n = 0; n < 10; ++n) {
        CHECK(re[n] == doctest::Approx(2.0 * n + 1.0).epsilon(1e-6));
        CHECK(rel[n] < 1e-6);
    }
    const Json j = json_at(dir / "s.json");
    CHECK(j["schema_version"] == pseudospec::io::kSchemaVersion);
    CHECK(j["config"]["N"] == 80);
    CHECK(pseudospec::io::read_number(j["eigenvalues"][3]["lambda"]["re"]) == re[3]);
    CHECK(fs::exists(dir / "s.svg"));
}

TEST_CASE("validation failures exit 2 and write nothing") {
    const auto dir = fresh_dir("invalid");
    CHECK(run_cli(dir, "spectrum --c-re -1 --out s") == 2);
    CHECK(run_cli(dir, "spectrum --c-re 0 --out s") == 2);
    CHECK(run_cli(dir, "perturb --eps 0 --out p") == 2);
    CHECK(run_cli(dir, "pseudospectrum --levels 1e-3,1e-2 --out f") == 2);
    CHECK(run_cli(dir, "spectrum --N 1 --out s") == 2);
    CHECK(run_cli(dir, "spectrum --bogus 3") == 2);
    CHECK(run_cli(dir, "nosuchcommand") == 2);
    CHECK(run_cli(dir, "perturb --format svg --out p") == 2);
    for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path().filename() == "log.txt");
}

TEST_CASE("missing config file is an I/O error") {
    const auto dir = fresh_dir("io_error");
    CHECK(run_cli(dir, "spectrum --config nothere.json") == 1);
    pseudospec::io::write_file_atomic(dir / "broken.json", "{not json");
    CHECK(run_cli(dir, "spectrum --config broken.json") == 2);
}

TEST_CASE("config file values are overridden by flags") {
    const auto dir = fresh_dir("config");
    pseudospec::io::write_file_atomic(dir / "run.json", R"({"N": 30, "L": 5, "count": 4})");
    REQUIRE(run_cli(dir, "spectrum --config run.json --N 40 --out s") == 0);
    const Json j = json_at(dir / "s.json");
    CHECK(j["config"]["N"] == 40);
    CHECK(j["config"]["L"] == 5.0);
    CHECK(j["config"]["count"] == 4);
    CHECK(j["eigenvalues"].size() == 4);

    pseudospec::io::write_file_atomic(dir / "bad.json", R"({"N": 30, "frobnicate": 1})");
    CHECK(run_cli(dir, "spectrum --config bad.json --out t") == 2);
    pseudospec::io::write_file_atomic(dir / "other.json", R"({"N": 30, "eps": 0.5})");
    CHECK(run_cli(dir, "spectrum --config other.json --out u") == 0);
}

TEST_CASE("format selection") {
    const auto dir = fresh_dir("formats");
    REQUIRE(run_cli(dir, "spectrum --N 30 --count 3 --format csv --out s") == 0);
    CHECK(fs::exists(dir / "s.csv"));
    CHECK_FALSE(fs::exists(dir / "s.json"));
    CHECK_FALSE(fs::exists(dir / "s.svg"));
}

TEST_CASE("eigenfunctions command") {
    const auto dir = fresh_dir("eigenfunctions");
    REQUIRE(run_cli(dir, "eigenfunctions --N 120 --L 8 --modes 0,2 --out e") == 0);
    const auto doc = pseudospec::io::parse_csv(slurp(dir / "e.csv"));
    const auto exact = doc.numeric_column("exact_re_2");
    const auto computed = doc.numeric_column("computed_re_2");
    REQUIRE(exact.size() == computed.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < exact.size(); ++k) worst = std::max(worst, std::abs(exact[k] - computed[k]));
    CHECK(worst < 1e-5);
    const Json j = json_at(dir / "e.json");
    CHECK(j.dump().find("residual") != std::string::npos);
}

TEST_CASE("pseudospectrum of the 1 x 1 operator draws a circle") {
    const auto dir = fresh_dir("pseudo_scalar");
    REQUIRE(run_cli(dir, "pseudospectrum --N 2 --L 1 --window 0,4,-2,2 --grid 41,41 --levels 0.5 --out f") == 0);
    const auto doc = pseudospec::io::parse_csv(slurp(dir / "f.csv"));
    const auto re = doc.numeric_column("re");
    const auto im = doc.numeric_column("im");
    const auto sigma = doc.numeric_column("sigma_min");
    REQUIRE(sigma.size() == 41 * 41);
    for (std::size_t k = 0; k < sigma.size(); k += 37) CHECK(sigma[k] == doctest::Approx(std::hypot(re[k] - 2.0, im[k])).epsilon(1e-12));
    const Json j = json_at(dir / "f.json");
    CHECK(j["nested"] == true);
    CHECK(slurp(dir / "f.svg").find("<polygon") != std::string::npos);
}

TEST_CASE("pseudospectrum bytes do not depend on workers or repetition") {
    const std::string args = "pseudospectrum --N 40 --window 0,40,0,40 --grid 25,21 --out f";
    const auto a = fresh_dir("pseudo_a");
    const auto b = fresh_dir("pseudo_b");
    const auto c = fresh_dir("pseudo_c");
    REQUIRE(run_cli(a, args) == 0);
    REQUIRE(run_cli(b, args) == 0);
    REQUIRE(run_cli(c, args + " --workers 3") == 0);
    CHECK(same_outputs(a, b, "f"));
    CHECK(same_outputs(a, c, "f"));
}

TEST_CASE("curve command: self-test, fit refusal and determinism") {
    const auto dir = fresh_dir("curve");
    REQUIRE(run_cli(dir, "curve --selftest --out st") == 0);
    const Json st = json_at(dir / "st.json");
    CHECK(st["selftest_pass"] == true);
    CHECK(std::abs(pseudospec::io::read_number(st["fit"]["slope"]) + 1.0 / 3.0) <= 1e-10);

    CHECK(run_cli(dir, "curve --N 40 --samples 5 --out few") == 5);
    const Json few = json_at(dir / "few.json");
    CHECK(few.contains("fit_error"));

    const auto other = fresh_dir("curve_b");
    REQUIRE(run_cli(dir, "curve --N 60 --p 1 --samples 20 --out t") == 0);
    REQUIRE(run_cli(other, "curve --N 60 --p 1 --samples 20 --workers 2 --out t") == 0);
    CHECK(same_outputs(dir, other, "t"));
}

TEST_CASE("kernel-check refusals and guards") {
    const auto dir = fresh_dir("kernel");
    CHECK(run_cli(dir, "kernel-check --h-list 1e-3,1e-2,1e-1 --out k") == 5);
    REQUIRE(run_cli(dir, "kernel-check --mu 0.5 --h-list 1e-3,3e-3,1e-2,3e-2,1e-1,3e-1 --out m") == 0);
    const Json m = json_at(dir / "m.json");
    CHECK(m.dump().find("fit skipped") != std::string::npos);
    CHECK(run_cli(dir, "kernel-check --a 0.7 --a0 0.5 --out bad") == 2);
}

TEST_CASE("perturb command passes and is reproducible") {
    const auto a = fresh_dir("perturb_a");
    const auto b = fresh_dir("perturb_b");
    REQUIRE(run_cli(a, "perturb --N 30 --trials 8 --seed 9 --out p") == 0);
    REQUIRE(run_cli(b, "perturb --N 30 --trials 8 --seed 9 --workers 4 --out p") == 0);
    CHECK(same_outputs(a, b, "p"));
    const Json j = json_at(a / "p.json");
    CHECK(j["passed"] == true);
    CHECK(pseudospec::io::read_number(j["max_ratio"]) <= 1.0 + 1e-6);
    CHECK(j["config"]["seed"] == 9);
    CHECK_FALSE(fs::exists(a / "p.svg"));
}

TEST_CASE("help exits 0") {
    const auto dir = fresh_dir("help");
    CHECK(run_cli(dir, "--help") == 0);
    CHECK(run_cli(dir, "curve --help") == 0);
}

}  // TEST_SUITE
