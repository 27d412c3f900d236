#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "io/json_out.hpp"

namespace pseudospec::cli {

enum class Command { spectrum, eigenfunctions, pseudospectrum, curve, kernel_check, perturb };

[[nodiscard]] std::string command_name(Command cmd);

/// Every flag of every subcommand, resolved. `*_given` records whether a
/// value came from the flags or the config file rather than the default.
struct RunConfig {
    Command command = Command::spectrum;

    double c_re = 1.0;
    double c_im = 5.0;
    bool c_given = false;
    int n = 200;
    bool n_given = false;
    double half_width = 6.0;

    std::vector<double> window{0.0, 120.0, 0.0, 120.0};
    std::vector<int> grid{100, 100};
    std::vector<double> levels{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12};

    int count = 20;
    std::vector<int> modes{1, 5, 10, 20};

    double b = 1.0;
    double p = 1.0;
    double eta_min = 1.0;
    std::optional<double> eta_max;
    int samples = 30;
    std::string spacing = "log";
    double tail_fraction = 0.5;
    bool selftest = false;

    double eps = 1e-2;
    int trials = 100;
    std::uint64_t seed = 42;

    std::vector<double> h_list;
    double h_min = 1e-4;
    double h_max = 1e-1;
    int h_count = 12;
    double mu = 0.0;
    double a = 0.5;
    double a0 = 0.5;

    int workers = 1;
    std::vector<std::string> formats;
    std::string out;
};

/// Parses argv (including a --config JSON whose entries are applied before
/// the explicit flags, so flags win). Throws ConfigError on bad input;
/// returns nullopt after printing help.
[[nodiscard]] std::optional<RunConfig> parse_command_line(int argc, char** argv);

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Re-checks every numeric constraint of the selected command. Throws
/// ConfigError.
void validate(const RunConfig& cfg);

/// The resolved configuration for the selected command as JSON (workers
/// omitted: outputs do not depend on it).
[[nodiscard]] io::Json config_echo(const RunConfig& cfg);

/// Formats the command writes when --format is absent.
[[nodiscard]] std::vector<std::string> supported_formats(Command cmd);

}  // namespace pseudospec::cli
