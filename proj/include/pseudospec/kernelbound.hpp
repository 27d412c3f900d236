#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pseudospec/fit.hpp"
#include "pseudospec/matrix.hpp"

namespace pseudospec::kernel {

/// h = 1/Re(z), mu = Im(z)/Re(z); the kernel lives on x <= y <= a with
/// x, y in [-a0, a0].
struct SemiclassicalParams {
    double h = 1e-2;
    double mu = 0.0;
    Complex c{1.0, 6.0};
    double a = 0.5;
    double a0 = 0.5;

    /// h > 0, Im(c) > 0, 0 < a <= a0, all finite.
    void validate() const;
};

/// Leading-order symbol -(c/2) x^2 + i mu/2.
[[nodiscard]] Complex lambda_symbol(double x, double mu, Complex c);

/// (1/(2h)) (-Im(c) x^3/3 + mu x), normalised by g(0) = 0.
[[nodiscard]] double g_function(double x, const SemiclassicalParams& p);

/// |K(x, y)| = e^{-g(x) + g(y)} / h on x <= y <= a, else 0. Returns +inf
/// when the exponent overflows.
[[nodiscard]] double kernel_value(double x, double y, const SemiclassicalParams& p);

inline constexpr int kSupMesh = 2001;
inline constexpr int kSupRefine = 201;
inline constexpr double kSchurRelTol = 1e-10;

struct SchurBound {
    /// sup over x in [-a0, a0] of the integral of |K| dy over [x, a].
    double s1 = 0.0;
    /// sup over y in [-a0, a] of the integral of |K| dx over [-a0, y].
    double s2 = 0.0;
    double s1_argmax = 0.0;
    double s2_argmax = 0.0;
    /// Quadrature error estimates at the maximisers, relative.
    double s1_rel_error = 0.0;
    double s2_rel_error = 0.0;

    [[nodiscard]] double norm_bound() const;
};

/// Sups on a kSupMesh-point uniform mesh, then kSupRefine points between the
/// neighbours of the mesh argmax. Throws ConvergenceError when a quadrature
/// fails to converge.
[[nodiscard]] SchurBound schur_bound(const SemiclassicalParams& p);

struct ScalingRow {
    double h = 0.0;
    SchurBound bound;
};

struct KernelScalingReport {
    SemiclassicalParams base;
    /// Descending h.
    std::vector<ScalingRow> rows;
    std::optional<double> fitted_slope;
    std::optional<double> fitted_intercept;
    std::optional<double> fit_residual;
    double max_rel_error = 0.0;
    std::vector<std::string> warnings;
};

inline constexpr double kFitErrorCeiling = 1e-4;
inline constexpr std::size_t kMinScalingSamples = 6;

/// Schur bounds over the h list (parallel over h) and the log S1 vs log h
/// slope. Needs >= 6 distinct h spanning >= 2 decades (InsufficientData
/// otherwise). mu != 0 records a warning and skips the fit; a quadrature
/// error above 1e-4 relative refuses it (InsufficientData).
[[nodiscard]] KernelScalingReport scaling_fit(const std::vector<double>& h_list, const SemiclassicalParams& base,
                                              int workers = 1);

/// Least-squares line through (log h, log s).
[[nodiscard]] LineFit log_log_fit(const std::vector<double>& h, const std::vector<double>& s);

/// n values logarithmically spaced over [lo, hi], both ends included.
[[nodiscard]] std::vector<double> logspace(double lo, double hi, int n);

/// -g(x) + g(y) <= (lambda/h)(x^3 - y^3) + C mu^{3/2}/h, up to 1e-12 relative
/// slack. Requires x <= y, max(|x|, |y|) <= a0 and mu >= 0.
[[nodiscard]] bool theorem2_inequality_check(double x, double y, const SemiclassicalParams& p, double lambda_const,
                                             double c_const);

struct Theorem2Sample {
    double x = 0.0;
    double y = 0.0;
    double mu = 0.0;
    double h = 0.0;
};

struct Theorem2Range {
    double xy_lo = -0.5;
    double xy_hi = 0.5;
    double mu_lo = 0.0;
    double mu_hi = 0.01;
    double h_lo = 1e-3;
    double h_hi = 1e-1;
    int samples = 10000;
};

struct Theorem2Candidate {
    double lambda_const = 0.0;
    double c_const = 0.0;
    int violations = 0;
    std::optional<Theorem2Sample> first_violation;
};

struct Theorem2Report {
    Theorem2Range range;
    std::uint64_t seed = 0;
    std::vector<Theorem2Candidate> candidates;
    /// First candidate (grid order) with zero violations.
    std::optional<Theorem2Candidate> found;
};

/// lambda in Im(c) * {1/6, 1/8, 1/12, 1/24} by C in {0.1, 1, 10, 100}.
[[nodiscard]] std::vector<std::pair<double, double>> theorem2_grid(Complex c);

/// Draws the (x <= y, mu, h) sample once (h log-uniform) and checks every
/// grid pair against it.
[[nodiscard]] Theorem2Report theorem2_search(Complex c, const Theorem2Range& range, std::uint64_t seed);

/// s - t <= eps (s^3 - t^3) + 1/eps up to 1e-12 relative slack.
/// Requires s >= t and 0 < eps < 1.
[[nodiscard]] bool lemma1_check(double s, double t, double eps);

struct Lemma1Sample {
    double s = 0.0;
    double t = 0.0;
    double eps = 0.0;
};

struct Lemma1Report {
    int samples = 0;
    std::uint64_t seed = 0;
    int violations = 0;
    std::vector<Lemma1Sample> counterexamples;
};

/// s, t uniform in [-range, range] (ordered so s >= t), eps uniform in (0, 1).
[[nodiscard]] Lemma1Report lemma1_sweep(int samples, std::uint64_t seed, double range = 10.0);

struct TailIntegral {
    double value = 0.0;
    double truncation = 0.0;
    double tail_bound = 0.0;
    double quadrature_error = 0.0;
};

/// Truncation point: exponent reaches ln(1e18).
inline constexpr double kTailExponent = 41.446531673892822;

/// Integral of e^{-lambda (y^3 - x^3)} over [x, inf). Truncated where the
/// exponent reaches ln(1e18); throws ConvergenceError when the analytic tail
/// bound exceeds 1e-9 of the value or the quadrature fails.
[[nodiscard]] TailIntegral airy_tail_integral(double x, double lambda_const);

}  // namespace pseudospec::kernel
