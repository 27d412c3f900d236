#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "io/atomic_file.hpp"
#include "io/csv.hpp"

namespace pseudospec::cli {

namespace {

const std::map<Command, std::string>& names() {
    static const std::map<Command, std::string> table{
        {Command::spectrum, "spectrum"},   {Command::eigenfunctions, "eigenfunctions"},
        {Command::pseudospectrum, "pseudospectrum"}, {Command::curve, "curve"},
        {Command::kernel_check, "kernel-check"},     {Command::perturb, "perturb"},
    };
    return table;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<double> parse_reals(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        try {
            out.push_back(io::parse_number(item));
        } catch (const std::invalid_argument&) {
            throw ConfigError(flag + ": '" + item + "' is not a number");
        }
    }
    return out;
}

std::vector<int> parse_ints(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    for (double v : parse_reals(text, flag)) {
        if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(flag + ": expected integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) out += (k ? "," : "") + io::format_number(values[k]);
    return out;
}

std::string join(const std::vector<int>& values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) out += (k ? "," : "") + std::to_string(values[k]);
    return out;
}

// Flag spellings accepted in --config files.
const std::set<std::string>& known_flags() {
    static const std::set<std::string> flags{
        "c-re",    "c-im",   "N",       "L",         "window",  "grid",  "levels", "count", "modes",
        "b",       "p",      "eta-min", "eta-max",   "samples", "spacing", "tail-fraction", "selftest",
        "eps",     "trials", "seed",    "h-list",    "h-min",   "h-max", "h-count", "mu",   "a",
        "a0",      "workers", "format", "out",
    };
    return flags;
}

std::string token_value(const io::Json& value, const std::string& key) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    if (value.is_number()) return io::format_number(value.get<double>());
    if (value.is_array()) {
        std::string out;
        for (std::size_t k = 0; k < value.size(); ++k) out += (k ? "," : "") + token_value(value[k], key);
        return out;
    }
    throw ConfigError("config key '" + key + "': unsupported value type");
}

struct Bindings {
    std::string window;
    std::string grid;
    std::string levels;
    std::string modes;
    std::string h_list;
    std::string format;
    double eta_max = 0.0;
    std::string config_path;
};

void add_common(CLI::App* sub, RunConfig& cfg, Bindings& bind, bool operator_flags) {
    sub->add_option("--c-re", cfg.c_re, "Re(c)")->capture_default_str();
    sub->add_option("--c-im", cfg.c_im, "Im(c)")->capture_default_str();
    if (operator_flags) {
        sub->add_option("--N", cfg.n, "Chebyshev intervals")->capture_default_str();
        sub->add_option("--L", cfg.half_width, "Domain half-width")->capture_default_str();
    }
    sub->add_option("--workers", cfg.workers, "Worker threads (0 = all)")->capture_default_str();
    sub->add_option("--format", bind.format, "csv|json|svg, comma-separated (default: all supported)");
    sub->add_option("--out", cfg.out, "Output base path; files are <out>.<format>");
    sub->add_option("--config", bind.config_path, "JSON file mirroring the flags");
}

}  // namespace

std::string command_name(Command cmd) { return names().at(cmd); }

std::vector<std::string> supported_formats(Command cmd) {
    if (cmd == Command::perturb) return {"csv", "json"};
    return {"csv", "json", "svg"};
}

std::optional<RunConfig> parse_command_line(int argc, char** argv) {
    RunConfig cfg;
    Bindings bind;
    CLI::App app{"Pseudospectra of the complex harmonic oscillator", "pseudospec"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    std::map<std::string, CLI::App*> subs;
    for (const auto& [cmd, name] : names()) {
        static const std::map<Command, std::string> help{
            {Command::spectrum, "Eigenvalues against c^{1/2}(2n+1)"},
            {Command::eigenfunctions, "Computed and exact eigenfunctions with residuals"},
            {Command::pseudospectrum, "sigma_min field and epsilon contours"},
            {Command::curve, "Resolvent norm along z = b eta + c eta^p"},
            {Command::kernel_check, "Schur bounds, scaling fit and inequality sweeps"},
            {Command::perturb, "Random-perturbation containment check"},
        };
        CLI::App* sub = app.add_subcommand(name, help.at(cmd));
        add_common(sub, cfg, bind, cmd != Command::kernel_check);
        subs[name] = sub;
    }

    auto* s = subs["spectrum"];
    s->add_option("--count", cfg.count, "Eigenvalues to report")->capture_default_str();

    s = subs["eigenfunctions"];
    s->add_option("--modes", bind.modes, "Comma-separated mode indices")->default_str(join(cfg.modes));

    s = subs["pseudospectrum"];
    s->add_option("--window", bind.window, "re0,re1,im0,im1")->default_str(join(cfg.window));
    s->add_option("--grid", bind.grid, "nx,ny")->default_str(join(cfg.grid));
    s->add_option("--levels", bind.levels, "Descending epsilon levels")->default_str(join(cfg.levels));

    s = subs["curve"];
    s->add_option("--b", cfg.b)->capture_default_str();
    s->add_option("--p", cfg.p)->capture_default_str();
    s->add_option("--eta-min", cfg.eta_min)->capture_default_str();
    s->add_option("--eta-max", bind.eta_max, "Default: |z_eta| = 0.9 trust radius");
    s->add_option("--samples", cfg.samples)->capture_default_str();
    s->add_option("--spacing", cfg.spacing, "log|linear")->capture_default_str();
    s->add_option("--tail-fraction", cfg.tail_fraction)->capture_default_str();
    s->add_flag("--selftest", cfg.selftest, "Fit synthetic |z|^{-1/3} data");

    s = subs["kernel-check"];
    s->add_option("--h-list", bind.h_list, "Explicit h values (overrides --h-min/--h-max/--h-count)");
    s->add_option("--h-min", cfg.h_min)->capture_default_str();
    s->add_option("--h-max", cfg.h_max)->capture_default_str();
    s->add_option("--h-count", cfg.h_count)->capture_default_str();
    s->add_option("--mu", cfg.mu)->capture_default_str();
    s->add_option("--a", cfg.a)->capture_default_str();
    s->add_option("--a0", cfg.a0)->capture_default_str();
    s->add_option("--seed", cfg.seed)->capture_default_str();

    s = subs["perturb"];
    s->add_option("--eps", cfg.eps)->capture_default_str();
    s->add_option("--trials", cfg.trials)->capture_default_str();
    s->add_option("--seed", cfg.seed)->capture_default_str();

    std::vector<std::string> args(argv, argv + argc);

    // Locate the subcommand and any --config, then splice the file's entries
    // in right after the subcommand so later explicit flags take precedence.
    std::size_t sub_pos = 0;
    for (std::size_t k = 1; k < args.size(); ++k) {
        if (subs.count(args[k])) {
            sub_pos = k;
            break;
        }
    }
    if (sub_pos != 0) {
        std::string config_path;
        for (std::size_t k = sub_pos + 1; k < args.size(); ++k) {
            if (args[k] == "--config" && k + 1 < args.size()) config_path = args[k + 1];
            if (args[k].rfind("--config=", 0) == 0) config_path = args[k].substr(9);
        }
        if (!config_path.empty()) {
            const std::string text = io::read_file(config_path);
            io::Json doc;
            try {
                doc = io::Json::parse(text);
            } catch (const std::exception& e) {
                throw ConfigError("--config " + config_path + ": " + e.what());
            }
            if (!doc.is_object()) throw ConfigError("--config: top level must be an object");
            CLI::App* sub = subs[args[sub_pos]];
            std::vector<std::string> tokens;
            for (const auto& [key, value] : doc.items()) {
                if (!known_flags().count(key)) throw ConfigError("--config: unknown key '" + key + "'");
                if (sub->get_option_no_throw("--" + key) == nullptr) continue;
                if (key == "selftest") {
                    if (!value.is_boolean()) throw ConfigError("--config: selftest must be a boolean");
                    if (value.get<bool>()) tokens.push_back("--selftest");
                    continue;
                }
                tokens.push_back("--" + key);
                tokens.push_back(token_value(value, key));
            }
            args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, tokens.begin(), tokens.end());
        }
    }

    std::vector<char*> raw;
    raw.reserve(args.size());
    for (auto& a : args) raw.push_back(a.data());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return std::nullopt;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    CLI::App* chosen = nullptr;
    for (const auto& [cmd, name] : names()) {
        if (subs[name]->parsed()) {
            cfg.command = cmd;
            chosen = subs[name];
        }
    }
    auto given = [&](const std::string& flag) {
        const CLI::Option* opt = chosen->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    cfg.c_given = given("--c-re") || given("--c-im");
    cfg.n_given = given("--N");
    if (cfg.command == Command::kernel_check && !cfg.c_given) cfg.c_im = 6.0;
    if (cfg.command == Command::perturb && !cfg.n_given) cfg.n = 100;

    if (given("--window")) cfg.window = parse_reals(bind.window, "--window");
    if (given("--grid")) cfg.grid = parse_ints(bind.grid, "--grid");
    if (given("--levels")) cfg.levels = parse_reals(bind.levels, "--levels");
    if (given("--modes")) cfg.modes = parse_ints(bind.modes, "--modes");
    if (given("--h-list")) cfg.h_list = parse_reals(bind.h_list, "--h-list");
    if (given("--eta-max")) cfg.eta_max = bind.eta_max;
    if (given("--format")) {
        cfg.formats = split_list(bind.format);
    } else {
        cfg.formats = supported_formats(cfg.command);
    }
    if (cfg.out.empty()) cfg.out = command_name(cfg.command);
    return cfg;
}

void validate(const RunConfig& cfg) {
    auto check = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    const bool finite_c = std::isfinite(cfg.c_re) && std::isfinite(cfg.c_im);
    check(finite_c, "c must be finite");
    if (cfg.command == Command::kernel_check) {
        check(cfg.c_im > 0.0, "kernel-check: need Im(c) > 0");
    } else {
        check(cfg.c_re > 0.0, "need Re(c) > 0");
        check(cfg.n >= 2, "--N: need N >= 2");
        check(cfg.n <= 4000, "--N: at most 4000 (dense matrices)");
        check(cfg.half_width > 0.0 && std::isfinite(cfg.half_width), "--L: need L > 0");
    }
    check(cfg.workers >= 0, "--workers: need >= 0");
    const auto allowed = supported_formats(cfg.command);
    check(!cfg.formats.empty(), "--format: empty");
    for (const auto& f : cfg.formats) {
        check(std::find(allowed.begin(), allowed.end(), f) != allowed.end(),
              "--format: '" + f + "' not supported by " + command_name(cfg.command));
    }
    check(!cfg.out.empty(), "--out: empty path");

    switch (cfg.command) {
        case Command::spectrum:
            check(cfg.count >= 1 && cfg.count <= cfg.n - 1, "--count: need 1 <= count <= N-1");
            break;
        case Command::eigenfunctions:
            check(!cfg.modes.empty(), "--modes: empty");
            for (int m : cfg.modes) check(m >= 0 && m <= cfg.n - 2, "--modes: need 0 <= n <= N-2");
            break;
        case Command::pseudospectrum: {
            check(cfg.window.size() == 4, "--window: need re0,re1,im0,im1");
            for (double v : cfg.window) check(std::isfinite(v), "--window: values must be finite");
            check(cfg.window[0] < cfg.window[1] && cfg.window[2] < cfg.window[3], "--window: need re0 < re1, im0 < im1");
            check(cfg.grid.size() == 2, "--grid: need nx,ny");
            check(cfg.grid[0] >= 2 && cfg.grid[1] >= 2, "--grid: need nx, ny >= 2");
            check(cfg.grid[0] <= 1000 && cfg.grid[1] <= 1000, "--grid: at most 1000 per axis");
            check(!cfg.levels.empty(), "--levels: empty");
            for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
                check(cfg.levels[k] > 0.0 && std::isfinite(cfg.levels[k]), "--levels: need positive finite values");
                check(k == 0 || cfg.levels[k] < cfg.levels[k - 1], "--levels: need strictly descending values");
            }
            break;
        }
        case Command::curve:
            if (cfg.selftest) break;
            check(cfg.b > 0.0 && std::isfinite(cfg.b), "--b: need b > 0");
            check(std::isfinite(cfg.p), "--p: must be finite");
            check(cfg.eta_min > 0.0 && std::isfinite(cfg.eta_min), "--eta-min: need > 0");
            if (cfg.eta_max) {
                check(std::isfinite(*cfg.eta_max) && *cfg.eta_max >= cfg.eta_min, "--eta-max: need >= eta-min");
            } else {
                check(cfg.p > 0.0, "--eta-max: required when p <= 0");
            }
            check(cfg.samples >= 1, "--samples: need >= 1");
            check(cfg.spacing == "log" || cfg.spacing == "linear", "--spacing: log or linear");
            check(cfg.tail_fraction > 0.0 && cfg.tail_fraction <= 1.0, "--tail-fraction: need (0, 1]");
            break;
        case Command::kernel_check:
            for (double h : cfg.h_list) check(h > 0.0 && std::isfinite(h), "--h-list: need positive values");
            check(cfg.h_min > 0.0 && cfg.h_max >= cfg.h_min && std::isfinite(cfg.h_max),
                  "--h-min/--h-max: need 0 < h-min <= h-max");
            check(cfg.h_count >= 1, "--h-count: need >= 1");
            check(std::isfinite(cfg.mu), "--mu: must be finite");
            check(cfg.a > 0.0 && cfg.a0 >= cfg.a && std::isfinite(cfg.a0), "--a/--a0: need 0 < a <= a0");
            break;
        case Command::perturb:
            check(cfg.eps > 0.0 && std::isfinite(cfg.eps), "--eps: need eps > 0");
            check(cfg.trials >= 1, "--trials: need >= 1");
            break;
    }
}

io::Json config_echo(const RunConfig& cfg) {
    io::Json j;
    j["command"] = command_name(cfg.command);
    j["c-re"] = cfg.c_re;
    j["c-im"] = cfg.c_im;
    if (cfg.command != Command::kernel_check) {
        j["N"] = cfg.n;
        j["L"] = cfg.half_width;
    }
    switch (cfg.command) {
        case Command::spectrum:
            j["count"] = cfg.count;
            break;
        case Command::eigenfunctions:
            j["modes"] = cfg.modes;
            break;
        case Command::pseudospectrum:
            j["window"] = cfg.window;
            j["grid"] = cfg.grid;
            j["levels"] = cfg.levels;
            break;
        case Command::curve:
            j["selftest"] = cfg.selftest;
            j["b"] = cfg.b;
            j["p"] = cfg.p;
            j["eta-min"] = cfg.eta_min;
            j["eta-max"] = cfg.eta_max ? io::Json(*cfg.eta_max) : io::Json("auto");
            j["samples"] = cfg.samples;
            j["spacing"] = cfg.spacing;
            j["tail-fraction"] = cfg.tail_fraction;
            break;
        case Command::kernel_check:
            j["h-list"] = cfg.h_list;
            j["h-min"] = cfg.h_min;
            j["h-max"] = cfg.h_max;
            j["h-count"] = cfg.h_count;
            j["mu"] = cfg.mu;
            j["a"] = cfg.a;
            j["a0"] = cfg.a0;
            j["seed"] = cfg.seed;
            break;
        case Command::perturb:
            j["eps"] = cfg.eps;
            j["trials"] = cfg.trials;
            j["seed"] = cfg.seed;
            break;
    }
    j["format"] = cfg.formats;
    j["out"] = cfg.out;
    return j;
}

}  // namespace pseudospec::cli
