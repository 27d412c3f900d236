#pragma once

#include <functional>

namespace pseudospec::quadrature {

struct Result {
    double value = 0.0;
    /// Estimated absolute error (Richardson difference summed over panels).
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;
};

/// Adaptive Simpson on [a, b], starting from 16 panels. The tolerance
/// max(abs_tol, rel_tol * |coarse estimate|) is split evenly over the panels
/// and halved at each bisection; a panel is accepted when its halves agree
/// with it to 15x its tolerance. Hitting max_depth clears `converged`.
[[nodiscard]] Result adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                      double rel_tol = 1e-10, double abs_tol = 0.0, int max_depth = 48);

}  // namespace pseudospec::quadrature
