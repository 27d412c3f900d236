#pragma once

#include "config.hpp"

namespace pseudospec::cli {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kValidation = 2,
    kConvergence = 3,
    kPropertyViolation = 4,
    kFitRefused = 5,
};

/// Runs the selected command and writes its outputs. Returns the exit code
/// for outcomes that still produce files (property violation, fit refusal);
/// other failures propagate as exceptions.
[[nodiscard]] int run(const RunConfig& cfg);

}  // namespace pseudospec::cli
