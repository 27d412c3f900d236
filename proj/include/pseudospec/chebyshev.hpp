#pragma once

#include <span>
#include <vector>

#include "pseudospec/matrix.hpp"

namespace pseudospec::chebyshev {

/// Chebyshev–Gauss–Lobatto nodes L*cos(j*pi/N), j = 0..N, in descending
/// order (points[0] = L, points[N] = -L).
struct ChebGrid {
    int n_intervals = 0;
    double half_width = 1.0;
    std::vector<double> points;
};

/// Dense spectral differentiation matrix of order 1 or 2 on a ChebGrid.
struct DiffMatrix {
    int order = 1;
    int n_intervals = 0;
    double half_width = 1.0;
    RMatrix entries;
};

/// Throws InvalidArgument for N < 2 or L <= 0.
[[nodiscard]] ChebGrid cheb_points(int n, double half_width = 1.0);

/// D^(1) uses the trigonometric form of x_i - x_j for off-diagonal entries and
/// negative row sums on the diagonal. D^(2) is formed as D^(1) * D^(1).
/// Entries on [-L, L] are the [-1, 1] entries divided by L^order.
[[nodiscard]] DiffMatrix diff_matrix(int n, int order, double half_width = 1.0);

/// Barycentric weights (-1)^j * delta_j with delta = 1/2 at the endpoints.
[[nodiscard]] std::vector<double> barycentric_weights(int n);

/// Value at x of the degree <= N interpolant through (points[j], values[j]).
/// Throws InvalidArgument if x lies outside [-L, L] or sizes disagree.
[[nodiscard]] Complex barycentric_eval(const ChebGrid& grid, std::span<const Complex> values, double x);

}  // namespace pseudospec::chebyshev
