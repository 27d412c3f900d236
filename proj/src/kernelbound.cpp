#include "pseudospec/kernelbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pseudospec/errors.hpp"
#include "pseudospec/fit.hpp"
#include "pseudospec/parallel.hpp"
#include "pseudospec/quadrature.hpp"
#include "pseudospec/rng.hpp"

namespace pseudospec::kernel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxExponent = 709.0;

// -g(x) + g(y).
double phase(double x, double y, const SemiclassicalParams& p) {
    return (p.c.imag() * (x * x * x - y * y * y) / 3.0 + p.mu * (y - x)) / (2.0 * p.h);
}

bool within_slack(double lhs, double rhs) {
    const double slack = 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return lhs <= rhs + slack;
}

struct SupResult {
    double value = 0.0;
    double argmax = 0.0;
    double rel_error = 0.0;
};

// Integral of e^{phase} over a row (S1) or column (S2) of the kernel support.
SupResult line_integral(const SemiclassicalParams& p, double at, bool row) {
    const double lo = row ? at : -p.a0;
    const double hi = row ? p.a : at;
    if (!(hi > lo)) return {0.0, at, 0.0};
    auto exponent = [&](double s) { return row ? phase(at, s, p) : phase(s, at, p); };
    // The phase is cubic in s with critical points at +-sqrt(mu / Im c).
    double peak = std::max(exponent(lo), exponent(hi));
    if (p.mu > 0.0) {
        const double crit = std::sqrt(p.mu / p.c.imag());
        for (double s : {-crit, crit}) {
            if (s > lo && s < hi) peak = std::max(peak, exponent(s));
        }
    }
    if (peak > kMaxExponent) return {kInf, at, 0.0};
    const auto r = quadrature::adaptive_simpson([&](double s) { return std::exp(exponent(s)); }, lo, hi, kSchurRelTol);
    if (!r.converged || !std::isfinite(r.value)) {
        std::ostringstream msg;
        msg << "schur_bound: quadrature did not converge at " << (row ? "x = " : "y = ") << at << " (h = " << p.h
            << ")";
        throw ConvergenceError(msg.str());
    }
    return {r.value / p.h, at, r.value > 0.0 ? r.error / r.value : 0.0};
}

SupResult sup_over(const SemiclassicalParams& p, double lo, double hi, bool row) {
    auto mesh_max = [&](double from, double to, int points) {
        SupResult best{-1.0, from, 0.0};
        for (int k = 0; k < points; ++k) {
            const double at = (k == points - 1) ? to : from + (to - from) * k / (points - 1);
            const SupResult r = line_integral(p, at, row);
            if (r.value > best.value) best = r;
            if (!std::isfinite(r.value)) break;
        }
        return best;
    };
    const SupResult coarse = mesh_max(lo, hi, kSupMesh);
    if (!std::isfinite(coarse.value)) return coarse;
    const double step = (hi - lo) / (kSupMesh - 1);
    const SupResult fine =
        mesh_max(std::max(lo, coarse.argmax - step), std::min(hi, coarse.argmax + step), kSupRefine);
    return fine.value > coarse.value ? fine : coarse;
}

}  // namespace

void SemiclassicalParams::validate() const {
    require(h > 0.0 && std::isfinite(h), "kernel: need h > 0");
    require(std::isfinite(mu), "kernel: mu must be finite");
    require(std::isfinite(c.real()) && std::isfinite(c.imag()) && c.imag() > 0.0, "kernel: need Im(c) > 0");
    require(a > 0.0 && a0 >= a && std::isfinite(a0), "kernel: need 0 < a <= a0");
}

Complex lambda_symbol(double x, double mu, Complex c) { return -0.5 * c * x * x + Complex(0.0, 0.5 * mu); }

double g_function(double x, const SemiclassicalParams& p) {
    return (-p.c.imag() * x * x * x / 3.0 + p.mu * x) / (2.0 * p.h);
}

double kernel_value(double x, double y, const SemiclassicalParams& p) {
    if (!(x <= y && y <= p.a)) return 0.0;
    const double e = phase(x, y, p);
    if (e > kMaxExponent) return kInf;
    return std::exp(e) / p.h;
}

double SchurBound::norm_bound() const { return std::sqrt(s1 * s2); }

SchurBound schur_bound(const SemiclassicalParams& p) {
    p.validate();
    const SupResult s1 = sup_over(p, -p.a0, p.a0, true);
    const SupResult s2 = sup_over(p, -p.a0, p.a, false);
    return {s1.value, s2.value, s1.argmax, s2.argmax, s1.rel_error, s2.rel_error};
}

LineFit log_log_fit(const std::vector<double>& h, const std::vector<double>& s) {
    require(h.size() == s.size(), "log_log_fit: size mismatch");
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t k = 0; k < h.size(); ++k) {
        require(h[k] > 0.0 && s[k] > 0.0, "log_log_fit: values must be positive");
        x.push_back(std::log(h[k]));
        y.push_back(std::log(s[k]));
    }
    return least_squares_line(x, y);
}

std::vector<double> logspace(double lo, double hi, int n) {
    require(lo > 0.0 && hi >= lo && std::isfinite(hi), "logspace: need 0 < lo <= hi");
    require(n >= 1, "logspace: need n >= 1");
    std::vector<double> out(static_cast<std::size_t>(n), lo);
    for (int k = 1; k < n; ++k) {
        out[static_cast<std::size_t>(k)] =
            (k == n - 1) ? hi : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (n - 1));
    }
    return out;
}

KernelScalingReport scaling_fit(const std::vector<double>& h_list, const SemiclassicalParams& base, int workers) {
    base.validate();
    for (double h : h_list) require(h > 0.0 && std::isfinite(h), "scaling_fit: h values must be positive");
    std::vector<double> hs = h_list;
    std::sort(hs.begin(), hs.end(), std::greater<>());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    if (hs.size() < kMinScalingSamples) {
        throw InsufficientData("scaling_fit: " + std::to_string(hs.size()) + " distinct h values, need at least " +
                               std::to_string(kMinScalingSamples));
    }
    if (hs.front() / hs.back() < 100.0 * (1.0 - 1e-12)) {
        throw InsufficientData("scaling_fit: h values span less than 2 decades");
    }

    KernelScalingReport report;
    report.base = base;
    report.rows.resize(hs.size());
    parallel_for(hs.size(), workers, [&](std::size_t k) {
        SemiclassicalParams p = base;
        p.h = hs[k];
        report.rows[k] = {hs[k], schur_bound(p)};
    });

    bool finite = true;
    for (const auto& row : report.rows) {
        report.max_rel_error = std::max({report.max_rel_error, row.bound.s1_rel_error, row.bound.s2_rel_error});
        if (!std::isfinite(row.bound.s1) || !std::isfinite(row.bound.s2)) {
            finite = false;
            std::ostringstream msg;
            msg << "kernel overflows at h = " << row.h;
            report.warnings.push_back(msg.str());
        }
    }
    if (base.mu != 0.0) {
        std::ostringstream msg;
        msg << "mu = " << base.mu << " != 0: pure-power fit skipped";
        report.warnings.push_back(msg.str());
        return report;
    }
    if (!finite) return report;
    if (report.max_rel_error > kFitErrorCeiling) {
        std::ostringstream msg;
        msg << "scaling_fit: quadrature error " << report.max_rel_error << " exceeds " << kFitErrorCeiling;
        throw InsufficientData(msg.str());
    }
    std::vector<double> h;
    std::vector<double> s1;
    for (const auto& row : report.rows) {
        h.push_back(row.h);
        s1.push_back(row.bound.s1);
    }
    const LineFit line = log_log_fit(h, s1);
    report.fitted_slope = line.slope;
    report.fitted_intercept = line.intercept;
    report.fit_residual = line.residual;
    return report;
}

bool theorem2_inequality_check(double x, double y, const SemiclassicalParams& p, double lambda_const,
                               double c_const) {
    p.validate();
    require(x <= y, "theorem2: need x <= y");
    require(std::max(std::abs(x), std::abs(y)) <= p.a0, "theorem2: need max(|x|, |y|) <= a0");
    require(p.mu >= 0.0, "theorem2: need mu >= 0");
    require(lambda_const > 0.0 && c_const > 0.0, "theorem2: need lambda > 0 and C > 0");
    const double lhs = phase(x, y, p);
    const double rhs = (lambda_const * (x * x * x - y * y * y) + c_const * std::pow(p.mu, 1.5)) / p.h;
    return within_slack(lhs, rhs);
}

std::vector<std::pair<double, double>> theorem2_grid(Complex c) {
    std::vector<std::pair<double, double>> grid;
    for (double divisor : {6.0, 8.0, 12.0, 24.0}) {
        for (double cc : {0.1, 1.0, 10.0, 100.0}) grid.emplace_back(c.imag() / divisor, cc);
    }
    return grid;
}

Theorem2Report theorem2_search(Complex c, const Theorem2Range& range, std::uint64_t seed) {
    require(range.xy_lo < range.xy_hi, "theorem2: need xy_lo < xy_hi");
    require(range.mu_lo >= 0.0 && range.mu_lo <= range.mu_hi, "theorem2: need 0 <= mu_lo <= mu_hi");
    require(range.h_lo > 0.0 && range.h_lo <= range.h_hi, "theorem2: need 0 < h_lo <= h_hi");
    require(range.samples >= 1, "theorem2: need samples >= 1");
    require(c.imag() > 0.0, "theorem2: need Im(c) > 0");

    SplitMix64 gen(seed);
    std::vector<Theorem2Sample> draws(static_cast<std::size_t>(range.samples));
    for (auto& d : draws) {
        d.x = gen.uniform(range.xy_lo, range.xy_hi);
        d.y = gen.uniform(range.xy_lo, range.xy_hi);
        if (d.x > d.y) std::swap(d.x, d.y);
        d.mu = gen.uniform(range.mu_lo, range.mu_hi);
        d.h = std::exp(gen.uniform(std::log(range.h_lo), std::log(range.h_hi)));
    }

    Theorem2Report report;
    report.range = range;
    report.seed = seed;
    const double a0 = std::max(std::abs(range.xy_lo), std::abs(range.xy_hi));
    for (const auto& [lambda_const, c_const] : theorem2_grid(c)) {
        Theorem2Candidate cand{lambda_const, c_const, 0, std::nullopt};
        for (const auto& d : draws) {
            const SemiclassicalParams p{d.h, d.mu, c, a0, a0};
            if (!theorem2_inequality_check(d.x, d.y, p, lambda_const, c_const)) {
                if (cand.violations++ == 0) cand.first_violation = d;
            }
        }
        report.candidates.push_back(cand);
        if (!report.found && cand.violations == 0) report.found = cand;
    }
    return report;
}

bool lemma1_check(double s, double t, double eps) {
    require(s >= t, "lemma1: need s >= t");
    require(eps > 0.0 && eps < 1.0, "lemma1: need 0 < eps < 1");
    return within_slack(s - t, eps * (s * s * s - t * t * t) + 1.0 / eps);
}

Lemma1Report lemma1_sweep(int samples, std::uint64_t seed, double range) {
    require(samples >= 1, "lemma1: need samples >= 1");
    require(range > 0.0 && std::isfinite(range), "lemma1: need range > 0");
    Lemma1Report report;
    report.samples = samples;
    report.seed = seed;
    SplitMix64 gen(seed);
    for (int k = 0; k < samples; ++k) {
        double s = gen.uniform(-range, range);
        double t = gen.uniform(-range, range);
        if (s < t) std::swap(s, t);
        double eps = 0.0;
        while (eps == 0.0) eps = gen.uniform();
        if (!lemma1_check(s, t, eps)) {
            ++report.violations;
            report.counterexamples.push_back({s, t, eps});
        }
    }
    return report;
}

TailIntegral airy_tail_integral(double x, double lambda_const) {
    require(std::isfinite(x), "airy_tail_integral: x must be finite");
    require(lambda_const > 0.0 && std::isfinite(lambda_const), "airy_tail_integral: need lambda > 0");

    // y = x + t: lambda (y^3 - x^3) = lambda t (3x^2 + 3xt + t^2), increasing in t.
    auto exponent = [&](double t) { return lambda_const * t * (3.0 * x * x + 3.0 * x * t + t * t); };
    double hi = 1.0;
    while (exponent(hi) < kTailExponent) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (exponent(mid) < kTailExponent ? lo : hi) = mid;
    }
    const double cut = hi;

    const auto r = quadrature::adaptive_simpson([&](double t) { return std::exp(-exponent(t)); }, 0.0, cut, 1e-12);
    if (!r.converged) throw ConvergenceError("airy_tail_integral: quadrature did not converge");

    const double edge = std::exp(-exponent(cut));
    double tail = 0.0;
    if (x + cut > 0.0) {
        tail = edge / (3.0 * lambda_const * (x + cut) * (x + cut));
    } else {
        tail = (-x - cut) * edge + std::exp(lambda_const * x * x * x) * std::tgamma(4.0 / 3.0) *
                                       std::pow(lambda_const, -1.0 / 3.0);
    }
    if (!(tail <= 1e-9 * r.value)) {
        std::ostringstream msg;
        msg << "airy_tail_integral: truncation tail bound " << tail << " exceeds 1e-9 of the value " << r.value;
        throw ConvergenceError(msg.str());
    }
    return {r.value, cut, tail, r.error};
}

}  // namespace pseudospec::kernel
