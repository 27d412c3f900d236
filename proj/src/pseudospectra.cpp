#include "pseudospec/pseudospectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pseudospec/errors.hpp"
#include "pseudospec/fit.hpp"
#include "pseudospec/linalg.hpp"
#include "pseudospec/parallel.hpp"
#include "pseudospec/rng.hpp"

namespace pseudospec {

void ComplexWindow::validate() const {
    require(std::isfinite(re_min) && std::isfinite(re_max) && std::isfinite(im_min) && std::isfinite(im_max),
            "window: bounds must be finite");
    require(re_min < re_max, "window: need re_min < re_max");
    require(im_min < im_max, "window: need im_min < im_max");
    require(nx >= 2 && ny >= 2, "window: need nx, ny >= 2");
}

double ComplexWindow::re_at(int ix) const noexcept {
    if (ix == nx - 1) return re_max;
    return re_min + (re_max - re_min) * static_cast<double>(ix) / static_cast<double>(nx - 1);
}

double ComplexWindow::im_at(int iy) const noexcept {
    if (iy == ny - 1) return im_max;
    return im_min + (im_max - im_min) * static_cast<double>(iy) / static_cast<double>(ny - 1);
}

namespace {

PseudospectrumField empty_field(const ComplexWindow& window) {
    window.validate();
    PseudospectrumField field;
    field.window = window;
    field.sigma_min.assign(static_cast<std::size_t>(window.nx) * static_cast<std::size_t>(window.ny), 0.0);
    return field;
}

double checked(double sigma, Complex z) {
    if (!std::isfinite(sigma) || sigma < 0.0) {
        std::ostringstream msg;
        msg << "sigma_min is not finite at z = " << z;
        throw ConvergenceError(msg.str());
    }
    return sigma;
}

}  // namespace

PseudospectrumField compute_field_serial(const CMatrix& matrix, const ComplexWindow& window) {
    PseudospectrumField field = empty_field(window);
    const linalg::ShiftedSigmaMin sigma(matrix);
    for (int iy = 0; iy < window.ny; ++iy) {
        for (int ix = 0; ix < window.nx; ++ix) {
            const Complex z = window.point(ix, iy);
            field.sigma_min[static_cast<std::size_t>(iy) * window.nx + ix] = checked(sigma(z), z);
        }
    }
    return field;
}

PseudospectrumField compute_field(const CMatrix& matrix, const ComplexWindow& window, int workers) {
    PseudospectrumField field = empty_field(window);
    const linalg::ShiftedSigmaMin sigma(matrix);
    const auto nx = static_cast<std::size_t>(window.nx);
    parallel_for(field.sigma_min.size(), workers, [&](std::size_t k) {
        const Complex z = window.point(static_cast<int>(k % nx), static_cast<int>(k / nx));
        field.sigma_min[k] = checked(sigma(z), z);
    });
    return field;
}

PseudospectrumField compute_field(const DiscretizedOperator& op, const ComplexWindow& window, int workers) {
    PseudospectrumField field = compute_field(op.matrix, window, workers);
    field.fingerprint = {op.params.c(), op.n, op.half_width};
    return field;
}

double disk_bound_excess(const PseudospectrumField& field, const std::vector<Complex>& eigenvalues) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int iy = 0; iy < field.window.ny; ++iy) {
        for (int ix = 0; ix < field.window.nx; ++ix) {
            const Complex z = field.window.point(ix, iy);
            double dist = std::numeric_limits<double>::infinity();
            for (const Complex& lambda : eigenvalues) dist = std::min(dist, std::abs(z - lambda));
            worst = std::max(worst, field.at(ix, iy) - dist);
        }
    }
    return worst;
}

bool field_levels_nested(const PseudospectrumField& field, const std::vector<double>& levels) {
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        const double large = levels[k];
        const double small = levels[k + 1];
        if (!(small < large)) return false;
        for (double s : field.sigma_min) {
            if (s <= small && !(s <= large)) return false;
        }
    }
    return true;
}

double resolvent_norm_at(const CMatrix& matrix, Complex z) {
    const double s = linalg::smallest_singular_value(shifted(matrix, z));
    return s == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / s;
}

double resolvent_norm_at(const DiscretizedOperator& op, Complex z) { return resolvent_norm_at(op.matrix, z); }

Complex curve_point(double b, double p, Complex c, double eta) { return b * eta + c * std::pow(eta, p); }

double default_eta_max(const DiscretizedOperator& op, double b, double p) {
    require(b > 0.0, "curve: need b > 0");
    require(p > 0.0, "curve: default eta range needs p > 0; pass eta_max explicitly");
    const double target = 0.9 * trust_radius(op);
    const Complex c = op.params.c();
    double lo = 0.0;
    double hi = 1.0;
    while (std::abs(curve_point(b, p, c, hi)) < target) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(curve_point(b, p, c, mid)) < target ? lo : hi) = mid;
    }
    return lo;
}

CurveTrace trace_curve(const DiscretizedOperator& op, const CurveSpec& spec, int workers) {
    require(spec.b > 0.0 && std::isfinite(spec.b), "curve: need b > 0");
    require(std::isfinite(spec.p), "curve: p must be finite");
    require(spec.eta_min > 0.0 && spec.eta_max >= spec.eta_min && std::isfinite(spec.eta_max),
            "curve: need 0 < eta_min <= eta_max");
    require(spec.samples >= 1, "curve: need samples >= 1");
    require(spec.samples == 1 || spec.eta_max > spec.eta_min, "curve: eta range is empty");

    CurveTrace trace;
    trace.b = spec.b;
    trace.p = spec.p;
    trace.c = op.params.c();
    trace.n = op.n;
    trace.half_width = op.half_width;
    trace.trust_radius = trust_radius(op);
    trace.samples.resize(static_cast<std::size_t>(spec.samples));

    for (int k = 0; k < spec.samples; ++k) {
        double eta = spec.eta_min;
        if (spec.samples > 1) {
            const double t = static_cast<double>(k) / (spec.samples - 1);
            eta = (spec.spacing == Spacing::log)
                      ? std::exp(std::log(spec.eta_min) + t * (std::log(spec.eta_max) - std::log(spec.eta_min)))
                      : spec.eta_min + t * (spec.eta_max - spec.eta_min);
            if (k == spec.samples - 1) eta = spec.eta_max;
        }
        auto& s = trace.samples[static_cast<std::size_t>(k)];
        s.eta = eta;
        s.z = curve_point(spec.b, spec.p, trace.c, eta);
        s.in_trust_region = std::abs(s.z) <= trace.trust_radius;
    }

    const linalg::ShiftedSigmaMin sigma(op.matrix);
    std::optional<linalg::ShiftedSigmaMin> refined;
    if (spec.check_stability) {
        const auto fine = discretize(op.params, 2 * op.n, op.half_width * std::numbers::sqrt2);
        refined.emplace(fine.matrix);
    }

    parallel_for(trace.samples.size(), workers, [&](std::size_t k) {
        auto& s = trace.samples[k];
        s.sigma_min = checked(sigma(s.z), s.z);
        s.resolvent_norm = s.sigma_min == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / s.sigma_min;
        if (refined) {
            const double fine_sigma = checked((*refined)(s.z), s.z);
            s.refined_resolvent_norm = fine_sigma == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / fine_sigma;
            const bool finite = std::isfinite(s.resolvent_norm) && std::isfinite(s.refined_resolvent_norm);
            s.stable = s.in_trust_region && finite &&
                       std::abs(std::log(s.resolvent_norm) - std::log(s.refined_resolvent_norm)) < 1e-2;
        } else {
            s.refined_resolvent_norm = std::numeric_limits<double>::quiet_NaN();
            s.stable = s.in_trust_region && std::isfinite(s.resolvent_norm);
        }
    });

    const auto outside = std::count_if(trace.samples.begin(), trace.samples.end(),
                                       [](const CurveSample& s) { return !s.in_trust_region; });
    if (outside > 0) {
        std::ostringstream msg;
        msg << outside << " sample(s) beyond the trust radius |lambda_" << trusted_index(op.n)
            << "| = " << trace.trust_radius << "; flagged unstable";
        trace.warnings.push_back(msg.str());
    }
    return trace;
}

ExponentFit fit_exponent(const CurveTrace& trace, double tail_fraction) {
    require(tail_fraction > 0.0 && tail_fraction <= 1.0, "fit_exponent: tail_fraction must be in (0, 1]");
    std::vector<const CurveSample*> stable;
    for (const auto& s : trace.samples) {
        if (s.stable && std::isfinite(s.resolvent_norm) && s.resolvent_norm > 0.0) stable.push_back(&s);
    }
    const auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(stable.size())));
    if (tail < kMinFitPoints) {
        throw InsufficientData("fit_exponent: " + std::to_string(tail) + " stable tail samples (of " +
                               std::to_string(stable.size()) + " stable), need at least " +
                               std::to_string(kMinFitPoints));
    }
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t k = stable.size() - tail; k < stable.size(); ++k) {
        x.push_back(std::log(std::abs(stable[k]->z)));
        y.push_back(std::log(stable[k]->resolvent_norm));
    }
    const LineFit line = least_squares_line(x, y);
    ExponentFit fit;
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.residual = line.residual;
    fit.eta_first = stable[stable.size() - tail]->eta;
    fit.eta_last = stable.back()->eta;
    fit.count = tail;
    fit.stable_count = stable.size();
    return fit;
}

bool sector_membership(Complex z, double c0) {
    require(c0 > 0.0, "sector_membership: need C0 > 0");
    return z.real() > 0.0 && std::abs(z.imag()) <= c0 * std::cbrt(z.real());
}

OmegaParameters omega_parameters(Complex c, int m, double p) {
    require(p > 0.0 && p < 1.0 / 3.0, "omega_parameters: need 0 < p < 1/3");
    require(m >= 0, "omega_parameters: need m >= 0");
    require(c.imag() > 0.0 && c.real() > 0.0, "omega_parameters: need Re(c) > 0 and Im(c) > 0");
    const Complex lambda = exact_eigenvalue(OscillatorParams(c), m);
    const double ep = lambda.imag() / c.imag();  // E^p
    const double e = std::pow(ep, 1.0 / p);
    const double b = (lambda.real() - c.real() * ep) / e;
    require(b > 0.0 && std::isfinite(b), "omega_parameters: no b > 0 solves b E + c E^p = lambda_m");
    return {b, e};
}

bool omega_region_membership(Complex z, int m, double p, Complex c, double b_mp, double e) {
    require(p > 0.0 && p < 1.0 / 3.0, "omega_region_membership: need 0 < p < 1/3");
    require(b_mp > 0.0 && e > 0.0, "omega_region_membership: need b > 0 and E > 0");
    const Complex lambda = exact_eigenvalue(OscillatorParams(c), m);
    const Complex z_e = curve_point(b_mp, p, c, e);
    require(std::abs(z_e - lambda) <= 1e-10 * std::max(1.0, std::abs(lambda)),
            "omega_region_membership: b E + c E^p does not match lambda_m");

    constexpr double angle_slack = 1e-12;
    const double radius = std::abs(z);
    const double r_e = std::abs(z_e);
    if (radius < r_e * (1.0 - 1e-14)) return false;

    // |z_eta| is increasing in eta for b > 0, Re(c) > 0, p > 0.
    double lo = e;
    double hi = 2.0 * e;
    while (std::abs(curve_point(b_mp, p, c, hi)) < radius) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(curve_point(b_mp, p, c, mid)) < radius ? lo : hi) = mid;
    }
    const Complex z_eta = curve_point(b_mp, p, c, 0.5 * (lo + hi));
    const double theta = std::arg(z);
    const double lower = std::arg(z_eta);
    const double upper = std::arg(c * std::conj(z_eta) / std::abs(c));
    return theta >= lower - angle_slack && theta <= upper + angle_slack;
}

PerturbationReport perturbation_check(const CMatrix& matrix, double eps, int trials, std::uint64_t seed,
                                      int workers) {
    require(eps > 0.0 && std::isfinite(eps), "perturbation_check: need eps > 0");
    require(trials >= 1, "perturbation_check: need trials >= 1");
    require(matrix.square() && matrix.rows() >= 1, "perturbation_check: need a square matrix");

    PerturbationReport report;
    report.eps = eps;
    report.trials = trials;
    report.seed = seed;
    report.perturbed.resize(static_cast<std::size_t>(trials));
    report.trial_max_ratio.assign(static_cast<std::size_t>(trials), 0.0);

    const linalg::ShiftedSigmaMin sigma(matrix);
    const std::size_t n = matrix.rows();
    parallel_for(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
        SplitMix64 gen(stream_seed(seed, t));
        CMatrix e(n, n);
        for (Complex& v : e.data()) v = Complex(gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0));
        const double scale = eps / linalg::matrix_two_norm(e);
        CMatrix perturbed = matrix;
        for (std::size_t k = 0; k < perturbed.data().size(); ++k) perturbed.data()[k] += scale * e.data()[k];
        auto eig = linalg::eigenvalues(perturbed).eigenvalues;
        std::stable_sort(eig.begin(), eig.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
        double worst = 0.0;
        for (const Complex& mu : eig) worst = std::max(worst, sigma(mu) / eps);
        report.trial_max_ratio[t] = worst;
        report.perturbed[t] = std::move(eig);
    });

    report.max_ratio = *std::max_element(report.trial_max_ratio.begin(), report.trial_max_ratio.end());
    report.passed = report.max_ratio <= 1.0 + kContainmentSlack;
    return report;
}

}  // namespace pseudospec
