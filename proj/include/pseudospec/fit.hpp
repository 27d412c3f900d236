#pragma once

#include <span>

namespace pseudospec {

/// Ordinary least-squares line y = slope * x + intercept.
/// `residual` is the sum of squared residuals.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

/// Throws InvalidArgument for fewer than 2 points or constant x.
[[nodiscard]] LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

/// Sum of squared residuals of an arbitrary line through the data.
[[nodiscard]] double squared_residual(std::span<const double> x, std::span<const double> y, double slope,
                                      double intercept);

}  // namespace pseudospec
