#pragma once

#include <functional>
#include <vector>

#include "pseudospec/matrix.hpp"

namespace pseudospec {

/// Coefficient of the complex harmonic oscillator H_c = -d^2/dx^2 + c x^2.
class OscillatorParams {
public:
    /// Throws InvalidArgument unless Re(c) > 0 and c is finite.
    explicit OscillatorParams(Complex c);

    [[nodiscard]] Complex c() const noexcept { return c_; }
    /// Im(c) != 0: the operator is not normal.
    [[nodiscard]] bool non_normal() const noexcept { return c_.imag() != 0.0; }

private:
    Complex c_;
};

/// Dirichlet Chebyshev discretization of H_c on [-L, L]: the interior block
/// of -D^(2) plus diag(c x_i^2), i = 1..N-1.
struct DiscretizedOperator {
    OscillatorParams params;
    int n = 0;
    double half_width = 0.0;
    std::vector<double> interior_points;
    CMatrix matrix;
};

[[nodiscard]] DiscretizedOperator discretize(const OscillatorParams& params, int n, double half_width);

/// Same construction with a general potential V(x) on the diagonal.
[[nodiscard]] CMatrix discretize_potential(int n, double half_width, const std::function<Complex(double)>& potential);

/// lambda_n = c^{1/2} (2n + 1), principal branch.
[[nodiscard]] Complex exact_eigenvalue(const OscillatorParams& params, int n);

/// Psi_n(x) = c^{1/8} H_n(c^{1/4} x) exp(-c^{1/2} x^2 / 2), physicists' Hermite
/// H_n by upward recurrence. Returns exactly 0 where the Gaussian factor
/// underflows.
[[nodiscard]] Complex exact_eigenfunction(const OscillatorParams& params, int n, double x);

struct SpectrumResult {
    std::vector<Complex> eigenvalues;   // ascending modulus
    std::vector<double> backward_errors;  // sigma_min(A - lambda I) / ||A||_2
};

[[nodiscard]] SpectrumResult compute_spectrum(const DiscretizedOperator& op);

/// Eigenvalues with index <= N/10 are trusted; beyond that the discretization
/// of the unbounded operator is not resolved.
[[nodiscard]] int trusted_index(int n) noexcept;

/// |lambda_{floor(N/10)}|, the radius beyond which resolvent samples are
/// treated as unresolved.
[[nodiscard]] double trust_radius(const DiscretizedOperator& op);

/// Computed eigenvalues that pass the backward-error test (<= 1e-8) and lie
/// within the trust radius.
[[nodiscard]] std::vector<Complex> converged_eigenvalues(const DiscretizedOperator& op, const SpectrumResult& spectrum);

struct EigenfunctionResidual {
    double residual = 0.0;
    /// residual > 1e-2: the grid is too coarse for this mode.
    bool under_resolved = false;
};

/// ||H^N psi - lambda_n psi||_2 / ||psi||_2 with psi = Psi_n on interior nodes.
[[nodiscard]] EigenfunctionResidual eigenfunction_residual(const DiscretizedOperator& op, int n);

}  // namespace pseudospec
