#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "pseudospec/errors.hpp"
#include "pseudospec/kernelbound.hpp"

using namespace pseudospec;
using namespace pseudospec::kernel;

namespace {

SemiclassicalParams params(double h, double mu, double im_c, double a, double a0) {
    SemiclassicalParams p;
    p.h = h;
    p.mu = mu;
    p.c = Complex(1.0, im_c);
    p.a = a;
    p.a0 = a0;
    return p;
}

// Direct integrand e^{-g(x)+g(y)}/h from the closed-form g, independent of
// kernel_value.
double direct_kernel(double x, double y, const SemiclassicalParams& p) {
    auto g = [&](double s) { return (-p.c.imag() * s * s * s / 3.0 + p.mu * s) / (2.0 * p.h); };
    return std::exp(-g(x) + g(y)) / p.h;
}

// Brute-force sups on a uniform mesh with composite Simpson per line.
std::pair<double, double> brute_schur(const SemiclassicalParams& p, int mesh, int panels) {
    double s1 = 0.0;
    for (int k = 0; k < mesh; ++k) {
        const double x = -p.a0 + 2.0 * p.a0 * k / (mesh - 1);
        if (x >= p.a) continue;
        s1 = std::max(s1, oracle::simpson([&](double y) { return direct_kernel(x, y, p); }, x, p.a, panels));
    }
    double s2 = 0.0;
    for (int k = 0; k < mesh; ++k) {
        const double y = -p.a0 + (p.a + p.a0) * k / (mesh - 1);
        if (y <= -p.a0) continue;
        s2 = std::max(s2, oracle::simpson([&](double x) { return direct_kernel(x, y, p); }, -p.a0, y, panels));
    }
    return {s1, s2};
}

const KernelScalingReport& reference_sweep() {
    static const KernelScalingReport report = scaling_fit(logspace(1e-4, 1e-1, 12), params(1e-2, 0.0, 6.0, 0.5, 0.5));
    return report;
}

}  // namespace

TEST_SUITE("kernelbound") {

TEST_CASE("lambda_symbol examples") {
    CHECK(lambda_symbol(0.0, 0.0, Complex(1.0, 6.0)) == Complex(0.0, 0.0));
    CHECK(lambda_symbol(1.0, 0.0, Complex(0.0, 2.0)) == Complex(0.0, -1.0));
    CHECK(std::abs(lambda_symbol(0.0, 0.1, Complex(1.0, 6.0)) - Complex(0.0, 0.05)) < 1e-16);
}

TEST_CASE("g_function examples") {
    CHECK(g_function(0.0, params(0.3, 0.2, 6.0, 0.5, 0.5)) == 0.0);
    CHECK(g_function(1.0, params(1.0, 0.0, 6.0, 0.5, 0.5)) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(g_function(1.0, params(0.5, 0.3, 3.0, 0.5, 0.5)) == doctest::Approx(-0.7).epsilon(1e-15));
}

TEST_CASE("g_function is the primitive of g' with g(0) = 0") {
    const auto p = params(0.5, 0.3, 3.0, 0.5, 0.5);
    auto gprime = [&](double x) { return (-p.c.imag() * x * x + p.mu) / (2.0 * p.h); };
    for (double x : {-1.3, -0.2, 0.4, 1.0, 2.0}) {
        const double integral = x >= 0 ? oracle::simpson(gprime, 0.0, x, 200) : -oracle::simpson(gprime, x, 0.0, 200);
        CHECK(g_function(x, p) == doctest::Approx(integral).epsilon(1e-12));
    }
}

TEST_CASE("kernel_value examples") {
    const auto p = params(1.0, 0.0, 6.0, 1.0, 1.0);
    CHECK(kernel_value(0.5, 0.2, p) == 0.0);
    CHECK(kernel_value(0.2, 0.2, params(0.25, 0.0, 6.0, 0.5, 0.5)) == 4.0);
    CHECK(kernel_value(0.0, 1.0, p) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(kernel_value(0.0, 0.6, params(1.0, 0.0, 6.0, 0.5, 0.5)) == 0.0);
    CHECK(kernel_value(-0.5, 0.3, params(1e-5, 0.5, 6.0, 0.5, 0.5)) == std::numeric_limits<double>::infinity());
}

TEST_CASE("params validation") {
    CHECK_THROWS_AS(params(0.0, 0.0, 6.0, 0.5, 0.5).validate(), InvalidArgument);
    CHECK_THROWS_AS(params(1.0, 0.0, -6.0, 0.5, 0.5).validate(), InvalidArgument);
    CHECK_THROWS_AS(params(1.0, 0.0, 6.0, 0.6, 0.5).validate(), InvalidArgument);
    CHECK_THROWS_AS(params(1.0, 0.0, 6.0, 0.0, 0.5).validate(), InvalidArgument);
}

TEST_CASE("schur_bound at h = 10 matches a brute-force Riemann oracle") {
    const auto p = params(10.0, 0.0, 6.0, 1.0, 1.0);
    const auto b = schur_bound(p);
    const auto [s1, s2] = brute_schur(p, 4001, 2000);
    CHECK(b.s1 == doctest::Approx(s1).epsilon(1e-6));
    CHECK(b.s2 == doctest::Approx(s2).epsilon(1e-6));
    CHECK(b.norm_bound() == doctest::Approx(std::sqrt(s1 * s2)).epsilon(1e-6));
    CHECK(b.s1_rel_error <= 1e-8);
}

TEST_CASE("schur_bound at small h matches the oracle and is symmetric") {
    const auto p = params(2e-2, 0.0, 6.0, 0.5, 0.5);
    const auto b = schur_bound(p);
    const auto [s1, s2] = brute_schur(p, 2001, 4000);
    CHECK(b.s1 == doctest::Approx(s1).epsilon(1e-5));
    CHECK(b.s2 == doctest::Approx(s2).epsilon(1e-5));
    CHECK(b.s1 == doctest::Approx(b.s2).epsilon(1e-8));
    CHECK(b.s1_argmax == doctest::Approx(-b.s2_argmax).epsilon(1e-6));
}

TEST_CASE("S1 scaling ratio at h = 1e-2 is 4 within 5%") {
    const double s_h = schur_bound(params(1e-2, 0.0, 6.0, 0.5, 0.5)).s1;
    const double s_h8 = schur_bound(params(1.25e-3, 0.0, 6.0, 0.5, 0.5)).s1;
    CHECK(s_h8 / s_h == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("reference sweep: slope, bounded h^{2/3} S1, monotonicity, symmetry") {
    const auto& r = reference_sweep();
    REQUIRE(r.rows.size() == 12);
    REQUIRE(r.fitted_slope.has_value());
    CHECK(*r.fitted_slope == doctest::Approx(-2.0 / 3.0).epsilon(0.075));
    CHECK(std::abs(*r.fitted_slope + 2.0 / 3.0) <= 0.05);
    CHECK(r.warnings.empty());
    CHECK(r.max_rel_error <= kFitErrorCeiling);

    double lo = 1e300;
    double hi = 0.0;
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        const auto& row = r.rows[k];
        const double scaled = row.bound.s1 * std::pow(row.h, 2.0 / 3.0);
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
        CHECK(row.bound.s1 > 0.0);
        CHECK(row.bound.s2 > 0.0);
        CHECK(row.bound.s1 == doctest::Approx(row.bound.s2).epsilon(1e-8));
        if (k > 0) {
            CHECK(row.h < r.rows[k - 1].h);
            CHECK(row.bound.s1 > r.rows[k - 1].bound.s1);
        }
    }
    CHECK(lo > 0.1);
    CHECK(hi / lo < 3.0);
}

TEST_CASE("scaling_fit is independent of the worker count") {
    const auto h = logspace(1e-3, 1e-1, 6);
    const auto base = params(1e-2, 0.0, 6.0, 0.5, 0.5);
    const auto a = scaling_fit(h, base, 1);
    const auto b = scaling_fit(h, base, 3);
    for (std::size_t k = 0; k < a.rows.size(); ++k) CHECK(a.rows[k].bound.s1 == b.rows[k].bound.s1);
    CHECK(*a.fitted_slope == *b.fitted_slope);
}

TEST_CASE("exponent universality over Im(c) and a") {
    // Asymptotic range: for Im(c) = 2, a = 0.25 the layer width (h/Im c)^{1/3}
    // exceeds a near h = 1e-1, which bends the fit towards h^{-1} there.
    const auto h = logspace(1e-5, 1e-2, 12);
    for (double im_c : {2.0, 6.0, 10.0}) {
        for (double a : {0.25, 0.5}) {
            const auto r = scaling_fit(h, params(1e-2, 0.0, im_c, a, a));
            REQUIRE(r.fitted_slope.has_value());
            INFO("Im(c) = " << im_c << ", a = " << a << ", slope = " << *r.fitted_slope);
            CHECK(std::abs(*r.fitted_slope + 2.0 / 3.0) <= 0.05);
        }
    }
}

TEST_CASE("log_log_fit on synthetic data") {
    const auto h = logspace(1e-4, 1e-1, 12);
    std::vector<double> power;
    std::vector<double> flat;
    for (double v : h) {
        power.push_back(std::pow(v, -2.0 / 3.0));
        flat.push_back(3.5);
    }
    CHECK(std::abs(log_log_fit(h, power).slope + 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(log_log_fit(h, flat).slope) <= 1e-12);
    CHECK_THROWS_AS((void)log_log_fit(h, std::vector<double>(3, 1.0)), InvalidArgument);
}

TEST_CASE("scaling_fit refusals and the mu guard") {
    const auto base = params(1e-2, 0.0, 6.0, 0.5, 0.5);
    CHECK_THROWS_AS((void)scaling_fit({1e-3, 1e-2, 1e-1}, base), InsufficientData);
    CHECK_THROWS_AS((void)scaling_fit({1e-2, 1e-2, 1e-2, 1e-2, 1e-2, 1e-2, 1e-1}, base), InsufficientData);
    CHECK_THROWS_AS((void)scaling_fit(logspace(1e-2, 5e-1, 8), base), InsufficientData);

    auto mu = base;
    mu.mu = 0.5;
    const auto r = scaling_fit(logspace(1e-3, 1e-1, 6), mu);
    CHECK_FALSE(r.fitted_slope.has_value());
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("logspace endpoints") {
    const auto v = logspace(1e-4, 1e-1, 12);
    CHECK(v.front() == 1e-4);
    CHECK(v.back() == 1e-1);
    CHECK(v[3] == doctest::Approx(1e-4 * std::pow(1e3, 3.0 / 11.0)).epsilon(1e-14));
}

TEST_CASE("theorem2 inequality examples") {
    const double im_c = 6.0;
    auto p = params(1e-2, 3e-3, im_c, 0.5, 0.5);
    for (double x : {-0.5, 0.0, 0.3}) CHECK(theorem2_inequality_check(x, x, p, 0.5, 0.1));

    p.mu = 0.0;
    // -g(x) + g(y) = (Im c / (6h))(x^3 - y^3): equality at lambda = Im(c)/6.
    for (auto [x, y] : {std::pair{-0.5, 0.5}, {-0.2, 0.1}, {0.1, 0.45}}) {
        const double lhs = -g_function(x, p) + g_function(y, p);
        CHECK(lhs == doctest::Approx(im_c / (6.0 * p.h) * (x * x * x - y * y * y)).epsilon(1e-13));
        CHECK(theorem2_inequality_check(x, y, p, im_c / 6.0, 1.0));
        CHECK(theorem2_inequality_check(x, y, p, im_c / 12.0, 1.0));
        CHECK_FALSE(theorem2_inequality_check(x, y, p, im_c / 6.0 * 1.01, 1.0));
    }
    CHECK_THROWS_AS((void)theorem2_inequality_check(0.3, 0.1, p, 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS((void)theorem2_inequality_check(-0.6, 0.1, p, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("theorem2 randomized sweep at lambda = Im(c)/12, C = 10") {
    const Complex c(1.0, 6.0);
    SplitMix64 rng(2024);
    int violations = 0;
    for (int k = 0; k < 10000; ++k) {
        double x = rng.uniform(-0.5, 0.5);
        double y = rng.uniform(-0.5, 0.5);
        if (x > y) std::swap(x, y);
        const double mu = rng.uniform(0.0, 0.01);
        const double h = std::exp(rng.uniform(std::log(1e-3), std::log(1e-1)));
        violations += theorem2_inequality_check(x, y, params(h, mu, c.imag(), 0.5, 0.5), c.imag() / 12.0, 10.0) ? 0 : 1;
    }
    CHECK(violations == 0);
}

TEST_CASE("theorem2_search grid and report") {
    const Complex c(1.0, 6.0);
    const auto grid = theorem2_grid(c);
    REQUIRE(grid.size() == 16);
    CHECK(grid.front().first == doctest::Approx(1.0));
    CHECK(grid.back().first == doctest::Approx(0.25));
    const auto r = theorem2_search(c, Theorem2Range{}, 7);
    REQUIRE(r.candidates.size() == 16);
    REQUIRE(r.found.has_value());
    CHECK(r.found->violations == 0);
    for (const auto& cand : r.candidates) {
        if (cand.lambda_const == doctest::Approx(0.5) && cand.c_const == 10.0) CHECK(cand.violations == 0);
    }
    const auto again = theorem2_search(c, Theorem2Range{}, 7);
    CHECK(again.found->lambda_const == r.found->lambda_const);
    CHECK(again.found->c_const == r.found->c_const);
}

TEST_CASE("lemma1 examples and sweep") {
    CHECK(lemma1_check(2.0, 2.0, 0.3));
    CHECK(lemma1_check(1.0, 0.0, 0.5));
    CHECK(lemma1_check(-3.0, -7.0, 0.999));
    CHECK_THROWS_AS((void)lemma1_check(0.0, 1.0, 0.5), InvalidArgument);
    CHECK_THROWS_AS((void)lemma1_check(1.0, 0.0, 1.0), InvalidArgument);

    const auto r = lemma1_sweep(100000, 42);
    CHECK(r.samples == 100000);
    CHECK(r.violations == 0);
    CHECK(r.counterexamples.empty());
}

TEST_CASE("airy_tail_integral examples") {
    const auto i0 = airy_tail_integral(0.0, 1.0);
    CHECK(std::abs(i0.value - std::tgamma(4.0 / 3.0)) <= 1e-8 * std::tgamma(4.0 / 3.0));
    CHECK(i0.tail_bound <= 1e-9 * i0.value);

    CHECK(airy_tail_integral(10.0, 1.0).value <= 0.01);
    for (double x : {5.0, 10.0, 20.0}) {
        for (double lambda : {0.5, 1.0, 3.0}) CHECK(x * x * airy_tail_integral(x, lambda).value <= 1.0 / lambda);
    }

    const double m10 = 100.0 * airy_tail_integral(-10.0, 1.0).value;
    const double m20 = 400.0 * airy_tail_integral(-20.0, 1.0).value;
    CHECK(m10 / m20 >= 0.5);
    CHECK(m10 / m20 <= 2.0);
    CHECK(100.0 * airy_tail_integral(-5.0, 1.0).value < 10.0);
}

TEST_CASE("airy_tail_integral agrees with a fine Simpson oracle") {
    for (double x : {-2.0, 0.5, 3.0}) {
        const double lambda = 1.5;
        const double upper = std::cbrt(x * x * x + 45.0 / lambda);
        const double want =
            oracle::simpson([&](double y) { return std::exp(-lambda * (y * y * y - x * x * x)); }, x, upper, 200000);
        CHECK(airy_tail_integral(x, lambda).value == doctest::Approx(want).epsilon(1e-9));
    }
    CHECK_THROWS_AS((void)airy_tail_integral(0.0, 0.0), InvalidArgument);
}

}  // TEST_SUITE
