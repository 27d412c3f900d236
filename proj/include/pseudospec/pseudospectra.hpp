#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pseudospec/matrix.hpp"
#include "pseudospec/oscillator.hpp"

namespace pseudospec {

/// Rectangular grid over the complex plane, nx columns by ny rows including
/// both edges.
struct ComplexWindow {
    double re_min = 0.0;
    double re_max = 1.0;
    double im_min = 0.0;
    double im_max = 1.0;
    int nx = 2;
    int ny = 2;

    /// Throws InvalidArgument unless re_min < re_max, im_min < im_max, nx, ny >= 2.
    void validate() const;
    [[nodiscard]] double re_at(int ix) const noexcept;
    [[nodiscard]] double im_at(int iy) const noexcept;
    [[nodiscard]] Complex point(int ix, int iy) const noexcept { return {re_at(ix), im_at(iy)}; }
    [[nodiscard]] double dx() const noexcept { return (re_max - re_min) / (nx - 1); }
    [[nodiscard]] double dy() const noexcept { return (im_max - im_min) / (ny - 1); }
};

struct OperatorFingerprint {
    Complex c{};
    int n = 0;
    double half_width = 0.0;
};

/// sigma_min(A - zI) sampled on a window; values are stored row by row
/// (index iy * nx + ix).
struct PseudospectrumField {
    ComplexWindow window;
    std::vector<double> sigma_min;
    OperatorFingerprint fingerprint;

    [[nodiscard]] double at(int ix, int iy) const { return sigma_min[static_cast<std::size_t>(iy) * window.nx + ix]; }
};

/// OpenMP over grid points (workers <= 0 means all available threads).
/// Bitwise identical to compute_field_serial for any worker count.
[[nodiscard]] PseudospectrumField compute_field(const DiscretizedOperator& op, const ComplexWindow& window,
                                                int workers = 1);
[[nodiscard]] PseudospectrumField compute_field(const CMatrix& matrix, const ComplexWindow& window, int workers = 1);

/// Reference implementation: one plain loop in row order.
[[nodiscard]] PseudospectrumField compute_field_serial(const CMatrix& matrix, const ComplexWindow& window);

/// Largest amount by which sigma_min exceeds dist(z, eigenvalues) over the
/// field (<= 0 when the disk bound holds everywhere).
[[nodiscard]] double disk_bound_excess(const PseudospectrumField& field, const std::vector<Complex>& eigenvalues);

/// True when {sigma <= eps_small} is a subset of {sigma <= eps_large} for
/// every adjacent pair of the given descending levels.
[[nodiscard]] bool field_levels_nested(const PseudospectrumField& field, const std::vector<double>& levels_descending);

/// 1 / sigma_min(A - zI); +infinity when sigma_min is 0.
[[nodiscard]] double resolvent_norm_at(const CMatrix& matrix, Complex z);
[[nodiscard]] double resolvent_norm_at(const DiscretizedOperator& op, Complex z);

enum class Spacing { log, linear };

struct CurveSpec {
    double b = 1.0;
    double p = 1.0;
    double eta_min = 1.0;
    double eta_max = 40.0;
    int samples = 30;
    Spacing spacing = Spacing::log;
    /// Recompute every sample at (2N, sqrt(2) L) for the stability flag.
    bool check_stability = true;
};

struct CurveSample {
    double eta = 0.0;
    Complex z{};
    double sigma_min = 0.0;
    double resolvent_norm = 0.0;
    /// Resolvent norm on the refined discretization (NaN when not checked).
    double refined_resolvent_norm = 0.0;
    bool in_trust_region = false;
    bool stable = false;
};

/// Resolvent norms along z_eta = b*eta + c*eta^p.
struct CurveTrace {
    double b = 1.0;
    double p = 1.0;
    Complex c{};
    int n = 0;
    double half_width = 0.0;
    double trust_radius = 0.0;
    std::vector<CurveSample> samples;
    std::vector<std::string> warnings;
};

/// z_eta = b*eta + c*eta^p.
[[nodiscard]] Complex curve_point(double b, double p, Complex c, double eta);

/// eta at which |z_eta| reaches 0.9 times the trust radius (p > 0).
[[nodiscard]] double default_eta_max(const DiscretizedOperator& op, double b, double p);

/// Samples are evaluated independently (OpenMP over samples when workers != 1);
/// results do not depend on the worker count. A sample is stable when it lies
/// inside the trust radius and |log R - log R_refined| < 1e-2.
[[nodiscard]] CurveTrace trace_curve(const DiscretizedOperator& op, const CurveSpec& spec, int workers = 1);

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    double eta_first = 0.0;
    double eta_last = 0.0;
    std::size_t count = 0;
    std::size_t stable_count = 0;
};

/// Least-squares slope of log(resolvent norm) against log|z| over the last
/// tail_fraction of the stable samples. Throws InsufficientData when that
/// tail holds fewer than 8 points.
[[nodiscard]] ExponentFit fit_exponent(const CurveTrace& trace, double tail_fraction = 0.5);

inline constexpr std::size_t kMinFitPoints = 8;

/// Re z > 0 and |Im z| <= C0 (Re z)^{1/3}.
[[nodiscard]] bool sector_membership(Complex z, double c0);

/// (b, E) with b*E + c*E^p = lambda_m. E follows from the imaginary part,
/// b from the real part; throws InvalidArgument if the resulting b <= 0.
struct OmegaParameters {
    double b = 0.0;
    double e = 0.0;
};
[[nodiscard]] OmegaParameters omega_parameters(Complex c, int m, double p);

/// Membership of z in Omega_{m,p}: z = |z_eta| e^{i theta} for some eta >= E
/// with arg(z_eta) <= theta <= arg(c conj(z_eta) / |c|). Throws
/// InvalidArgument for p outside (0, 1/3) or when b*E + c*E^p differs from
/// lambda_m by more than 1e-10 * max(1, |lambda_m|).
[[nodiscard]] bool omega_region_membership(Complex z, int m, double p, Complex c, double b_mp, double e);

struct PerturbationReport {
    double eps = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    double max_ratio = 0.0;
    bool passed = true;
    /// Eigenvalues of A + E for each trial, ascending modulus.
    std::vector<std::vector<Complex>> perturbed;
    std::vector<double> trial_max_ratio;
};

inline constexpr double kContainmentSlack = 1e-6;

/// For each trial draws E with uniform complex entries in [-1,1]^2, rescales
/// to ||E||_2 = eps, and checks sigma_min(A - mu I) <= eps (1 + 1e-6) for every
/// eigenvalue mu of A + E. Trials run in parallel with per-trial seeds.
[[nodiscard]] PerturbationReport perturbation_check(const CMatrix& matrix, double eps, int trials,
                                                    std::uint64_t seed, int workers = 1);

}  // namespace pseudospec
