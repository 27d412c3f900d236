#include "pseudospec/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pseudospec/chebyshev.hpp"
#include "pseudospec/errors.hpp"
#include "pseudospec/linalg.hpp"

namespace pseudospec {

OscillatorParams::OscillatorParams(Complex c) : c_(c) {
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), "oscillator: c must be finite");
    require(c.real() > 0.0, "oscillator: need Re(c) > 0");
}

CMatrix discretize_potential(int n, double half_width, const std::function<Complex(double)>& potential) {
    const auto grid = chebyshev::cheb_points(n, half_width);
    const auto d2 = chebyshev::diff_matrix(n, 2, half_width);
    const auto m = static_cast<std::size_t>(n - 1);
    CMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) a(i, j) = -d2.entries(i + 1, j + 1);
        a(i, i) += potential(grid.points[i + 1]);
    }
    return a;
}

DiscretizedOperator discretize(const OscillatorParams& params, int n, double half_width) {
    const Complex c = params.c();
    CMatrix a = discretize_potential(n, half_width, [c](double x) { return c * (x * x); });
    const auto grid = chebyshev::cheb_points(n, half_width);
    std::vector<double> interior(grid.points.begin() + 1, grid.points.end() - 1);
    return DiscretizedOperator{params, n, half_width, std::move(interior), std::move(a)};
}

Complex exact_eigenvalue(const OscillatorParams& params, int n) {
    require(n >= 0, "exact_eigenvalue: need n >= 0");
    return std::sqrt(params.c()) * static_cast<double>(2 * n + 1);
}

Complex exact_eigenfunction(const OscillatorParams& params, int n, double x) {
    require(n >= 0, "exact_eigenfunction: need n >= 0");
    const Complex c = params.c();
    const Complex root2 = std::sqrt(c);
    const Complex root4 = std::sqrt(root2);
    const Complex root8 = std::sqrt(root4);
    const Complex gauss_exponent = -root2 * (x * x) / 2.0;
    if (gauss_exponent.real() < -745.0) return Complex{};

    const Complex xi = root4 * x;
    Complex h_prev{1.0, 0.0};
    Complex h = 2.0 * xi;
    if (n == 0) h = h_prev;
    for (int k = 1; k < n; ++k) {
        const Complex next = 2.0 * xi * h - 2.0 * static_cast<double>(k) * h_prev;
        h_prev = h;
        h = next;
    }
    const Complex value = root8 * h * std::exp(gauss_exponent);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) return Complex{};
    return value;
}

int trusted_index(int n) noexcept { return n / 10; }

double trust_radius(const DiscretizedOperator& op) {
    return std::abs(exact_eigenvalue(op.params, trusted_index(op.n)));
}

SpectrumResult compute_spectrum(const DiscretizedOperator& op) {
    auto eig = linalg::eigenvalues(op.matrix);
    std::stable_sort(eig.eigenvalues.begin(), eig.eigenvalues.end(),
                     [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    auto errors = linalg::backward_errors(op.matrix, eig);
    return SpectrumResult{std::move(eig.eigenvalues), std::move(errors)};
}

std::vector<Complex> converged_eigenvalues(const DiscretizedOperator& op, const SpectrumResult& spectrum) {
    const double radius = trust_radius(op) * (1.0 + 1e-4);
    std::vector<Complex> out;
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
        if (spectrum.backward_errors[i] <= 1e-8 && std::abs(spectrum.eigenvalues[i]) <= radius)
            out.push_back(spectrum.eigenvalues[i]);
    }
    return out;
}

EigenfunctionResidual eigenfunction_residual(const DiscretizedOperator& op, int n) {
    const Complex lambda = exact_eigenvalue(op.params, n);
    CVector psi(op.interior_points.size());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = exact_eigenfunction(op.params, n, op.interior_points[i]);
    const double psi_norm = norm2(psi);
    require(psi_norm > 0.0, "eigenfunction_residual: Psi_" + std::to_string(n) + " vanishes on the grid");
    CVector r = multiply(op.matrix, psi);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lambda * psi[i];
    const double residual = norm2(r) / psi_norm;
    return EigenfunctionResidual{residual, residual > 1e-2};
}

}  // namespace pseudospec
