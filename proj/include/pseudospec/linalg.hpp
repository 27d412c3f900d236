#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pseudospec/matrix.hpp"

namespace pseudospec::linalg {

/// P*A = L*U with unit lower L (|L_ij| <= 1) and upper U packed into one
/// matrix. `perm[i]` is the row of A that ended up in row i.
struct LuFactors {
    std::size_t n = 0;
    CMatrix packed;
    std::vector<std::size_t> perm;
    /// First pivot index whose magnitude fell below n * eps * ||A||_inf.
    std::optional<std::size_t> singular_pivot;

    [[nodiscard]] bool singular() const noexcept { return singular_pivot.has_value(); }
    [[nodiscard]] CMatrix lower() const;
    [[nodiscard]] CMatrix upper() const;
    [[nodiscard]] CMatrix permutation() const;
};

[[nodiscard]] LuFactors lu_decompose(const CMatrix& a);

/// Solves A x = b. Throws InvalidArgument on a dimension mismatch and
/// ConvergenceError when the factors are flagged singular.
[[nodiscard]] CVector solve(const LuFactors& f, std::span<const Complex> b);

/// Solves A^H x = b with the same factors.
[[nodiscard]] CVector solve_adjoint(const LuFactors& f, std::span<const Complex> b);

struct EigenDecomposition {
    std::vector<Complex> eigenvalues;
};

/// All eigenvalues of a square complex matrix: balancing, Householder
/// reduction to Hessenberg form, then implicit single-shift QR with Wilkinson
/// shifts. At most 30*n QR sweeps in total; exceeding the cap throws
/// ConvergenceError naming the eigenvalue index that failed to deflate.
[[nodiscard]] EigenDecomposition eigenvalues(const CMatrix& a);

/// sigma_min(A - lambda I) / ||A||_2 for each eigenvalue.
[[nodiscard]] std::vector<double> backward_errors(const CMatrix& a, const EigenDecomposition& eig);

/// Lanczos on (A^H A)^{-1} through one LU of A. Returns 0 when the LU flags
/// a singular pivot. Throws InvalidArgument for non-finite input.
[[nodiscard]] double smallest_singular_value(const CMatrix& a);

/// Largest singular value by power iteration on A^H A.
[[nodiscard]] double matrix_two_norm(const CMatrix& a);

/// Largest singular value of A^{-1} by power iteration through the LU of A
/// (i.e. 1 / sigma_min estimated from the other side). Used to cross-check
/// smallest_singular_value.
[[nodiscard]] double inverse_two_norm(const CMatrix& a);

/// Unitary reduction Q^H A Q = H to upper Hessenberg form (H only).
[[nodiscard]] CMatrix hessenberg(const CMatrix& a);

/// Evaluates sigma_min(A - zI) for many shifts z. The matrix is reduced to
/// Hessenberg form once; each shift then costs one O(n^2) pivoted LU plus the
/// Lanczos solves. Immutable after construction and safe to share
/// between threads.
class ShiftedSigmaMin {
public:
    explicit ShiftedSigmaMin(const CMatrix& a);

    [[nodiscard]] std::size_t dimension() const noexcept { return h_.rows(); }
    [[nodiscard]] double norm_inf() const noexcept { return norm_inf_; }
    [[nodiscard]] double operator()(Complex z) const;

private:
    CMatrix h_;
    double norm_inf_ = 0.0;
};

/// Unit eigenvector for an (approximate) eigenvalue by shifted inverse
/// iteration.
[[nodiscard]] CVector eigenvector(const CMatrix& a, Complex lambda);

/// Iteration controls shared by the Lanczos, inverse and power iterations.
struct IterationLimits {
    static constexpr int inverse_cap = 1000;
    static constexpr int power_cap = 5000;
    static constexpr std::size_t lanczos_block = 120;
    static constexpr int lanczos_restarts = 20;
    static constexpr double residual_tol = 1e-10;
    static constexpr double change_tol = 1e-14;
    static constexpr std::uint64_t start_seed = 0x5eed5eedULL;
};

}  // namespace pseudospec::linalg
