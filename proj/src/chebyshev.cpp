#include "pseudospec/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pseudospec/errors.hpp"

namespace pseudospec::chebyshev {

ChebGrid cheb_points(int n, double half_width) {
    require(n >= 2, "cheb_points: need N >= 2, got " + std::to_string(n));
    require(half_width > 0.0 && std::isfinite(half_width), "cheb_points: need L > 0");

    ChebGrid grid{n, half_width, std::vector<double>(static_cast<std::size_t>(n) + 1)};
    auto& x = grid.points;
    // cos(j*pi/N) = sin(pi*(N-2j)/(2N)); fill the upper half and mirror.
    for (int j = 0; 2 * j <= n; ++j) {
        const double v = (2 * j == n)
                             ? 0.0
                             : half_width * std::sin(std::numbers::pi * (n - 2 * j) / (2.0 * n));
        x[static_cast<std::size_t>(j)] = v;
        x[static_cast<std::size_t>(n - j)] = -v;
    }
    return grid;
}

namespace {

RMatrix first_derivative_unit(int n) {
    const auto m = static_cast<std::size_t>(n) + 1;
    RMatrix d(m, m);
    const double h = std::numbers::pi / (2.0 * n);
    for (std::size_t i = 0; i < m; ++i) {
        const double ci = (i == 0 || i == m - 1) ? 2.0 : 1.0;
        double row_sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            const double cj = (j == 0 || j == m - 1) ? 2.0 : 1.0;
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            // x_i - x_j = 2 sin((i+j)h) sin((j-i)h)
            const double diff = 2.0 * std::sin(static_cast<double>(i + j) * h) *
                                std::sin((static_cast<double>(j) - static_cast<double>(i)) * h);
            const double v = (ci / cj) * sign / diff;
            d(i, j) = v;
            row_sum += v;
        }
        d(i, i) = -row_sum;
    }
    return d;
}

}  // namespace

DiffMatrix diff_matrix(int n, int order, double half_width) {
    require(order == 1 || order == 2, "diff_matrix: order must be 1 or 2, got " + std::to_string(order));
    require(n >= 2, "diff_matrix: need N >= 2, got " + std::to_string(n));
    require(half_width > 0.0 && std::isfinite(half_width), "diff_matrix: need L > 0");

    RMatrix d1 = first_derivative_unit(n);
    RMatrix entries = (order == 1) ? std::move(d1) : d1 * d1;
    if (half_width != 1.0) {
        const double scale = (order == 1) ? half_width : half_width * half_width;
        for (double& v : entries.data()) v /= scale;
    }
    return DiffMatrix{order, n, half_width, std::move(entries)};
}

std::vector<double> barycentric_weights(int n) {
    require(n >= 1, "barycentric_weights: need N >= 1");
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const double delta = (j == 0 || j == n) ? 0.5 : 1.0;
        w[static_cast<std::size_t>(j)] = (j % 2 == 0 ? 1.0 : -1.0) * delta;
    }
    return w;
}

Complex barycentric_eval(const ChebGrid& grid, std::span<const Complex> values, double x) {
    require(values.size() == grid.points.size(), "barycentric_eval: values must have N+1 entries");
    require(x >= -grid.half_width && x <= grid.half_width,
            "barycentric_eval: x outside [-L, L]");
    const auto w = barycentric_weights(grid.n_intervals);
    Complex num{};
    double den = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double dx = x - grid.points[j];
        if (dx == 0.0) return values[j];
        const double t = w[j] / dx;
        num += t * values[j];
        den += t;
    }
    return num / den;
}

}  // namespace pseudospec::chebyshev
