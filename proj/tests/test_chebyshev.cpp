#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "pseudospec/chebyshev.hpp"
#include "pseudospec/errors.hpp"

using namespace pseudospec;
using namespace pseudospec::chebyshev;

namespace {

// Random polynomial with coefficients in [-1, 1], evaluated with its l-th
// derivative by Horner on the differentiated coefficients.
struct Poly {
    std::vector<double> coef;  // ascending degree

    [[nodiscard]] Poly derivative() const {
        Poly d;
        for (std::size_t k = 1; k < coef.size(); ++k) d.coef.push_back(static_cast<double>(k) * coef[k]);
        if (d.coef.empty()) d.coef.push_back(0.0);
        return d;
    }
    [[nodiscard]] double operator()(double x) const {
        double acc = 0.0;
        for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
};

std::vector<double> matvec(const RMatrix& d, const std::vector<double>& v) {
    std::vector<double> out(d.rows(), 0.0);
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) out[i] += d(i, j) * v[j];
    return out;
}

}  // namespace

TEST_SUITE("chebyshev") {

TEST_CASE("cheb_points examples") {
    const auto g4 = cheb_points(4, 1.0);
    const std::vector<double> want4{1.0, std::sqrt(2.0) / 2.0, 0.0, -std::sqrt(2.0) / 2.0, -1.0};
    REQUIRE(g4.points.size() == 5);
    for (std::size_t j = 0; j < 5; ++j) CHECK(g4.points[j] == doctest::Approx(want4[j]).epsilon(1e-15));

    const std::vector<double> want2{1.0, 0.0, -1.0};
    CHECK(cheb_points(2, 1.0).points == want2);

    const std::vector<double> want6{6.0, 0.0, -6.0};
    CHECK(cheb_points(2, 6.0).points == want6);
}

TEST_CASE("cheb_points rejects bad input") {
    CHECK_THROWS_AS((void)cheb_points(1, 1.0), InvalidArgument);
    CHECK_THROWS_AS((void)cheb_points(4, 0.0), InvalidArgument);
    CHECK_THROWS_AS((void)cheb_points(4, -1.0), InvalidArgument);
}

TEST_CASE("nodes follow L cos(j pi / N), descending, exactly antisymmetric") {
    for (int n : {2, 3, 7, 16, 63, 64, 200}) {
        const double L = 6.0;
        const auto g = cheb_points(n, L);
        CHECK(g.points.front() == L);
        CHECK(g.points.back() == -L);
        for (int j = 0; j <= n; ++j) {
            CHECK(g.points[j] == doctest::Approx(L * std::cos(j * std::numbers::pi / n)).epsilon(1e-14));
            CHECK(g.points[j] + g.points[n - j] == 0.0);
            if (j > 0) CHECK(g.points[j] < g.points[j - 1]);
        }
    }
}

TEST_CASE("D1 for N = 2 matches the hand-differentiated quadratic interpolant") {
    const auto d = diff_matrix(2, 1, 1.0);
    const double want[3][3] = {{1.5, -2.0, 0.5}, {0.5, 0.0, -0.5}, {-0.5, 2.0, -1.5}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(d.entries(i, j) == doctest::Approx(want[i][j]).epsilon(1e-15));
}

TEST_CASE("D2 for N = 2 equals D1 * D1, every row (1, -2, 1)") {
    // Row 0 of D1 * D1 by hand: 1.5*1.5 - 2*0.5 + 0.5*(-0.5) = 1, ...
    const auto d2 = diff_matrix(2, 2, 1.0);
    for (int i = 0; i < 3; ++i) {
        CHECK(d2.entries(i, 0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(d2.entries(i, 1) == doctest::Approx(-2.0).epsilon(1e-15));
        CHECK(d2.entries(i, 2) == doctest::Approx(1.0).epsilon(1e-15));
    }
    const auto d1 = diff_matrix(2, 1, 1.0);
    const RMatrix sq = d1.entries * d1.entries;
    CHECK(sq == d2.entries);
}

TEST_CASE("D2 applied to x^2 is the constant 2") {
    for (int n : {2, 3, 8, 32, 64}) {
        for (double L : {1.0, 6.0}) {
            const auto g = cheb_points(n, L);
            const auto d2 = diff_matrix(n, 2, L);
            std::vector<double> f;
            for (double x : g.points) f.push_back(x * x);
            for (double v : matvec(d2.entries, f)) CHECK(v == doctest::Approx(2.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("diff_matrix rejects orders other than 1 and 2") {
    CHECK_THROWS_AS((void)diff_matrix(4, 0), InvalidArgument);
    CHECK_THROWS_AS((void)diff_matrix(4, 3), InvalidArgument);
    CHECK_THROWS_AS((void)diff_matrix(1, 1), InvalidArgument);
}

TEST_CASE("D1 rows sum to zero for N <= 64") {
    for (int n : {2, 5, 16, 33, 64}) {
        const auto d = diff_matrix(n, 1, 1.0);
        for (std::size_t i = 0; i < d.entries.rows(); ++i) {
            double s = 0.0;
            for (double v : d.entries.row(i)) s += v;
            CHECK(std::abs(s) <= 1e-12);
        }
    }
}

TEST_CASE("polynomial exactness up to degree N for N <= 64") {
    SplitMix64 rng(7);
    for (int n : {2, 4, 9, 16, 33, 64}) {
        const auto g = cheb_points(n, 1.0);
        for (int trial = 0; trial < 5; ++trial) {
            Poly p;
            for (int k = 0; k <= n; ++k) p.coef.push_back(rng.uniform(-1.0, 1.0));
            std::vector<double> samples;
            for (double x : g.points) samples.push_back(p(x));
            for (int order : {1, 2}) {
                const auto d = diff_matrix(n, order, 1.0);
                const Poly want = order == 1 ? p.derivative() : p.derivative().derivative();
                const auto got = matvec(d.entries, samples);
                double err = 0.0;
                double scale = 0.0;
                for (std::size_t i = 0; i < got.size(); ++i) {
                    err = std::max(err, std::abs(got[i] - want(g.points[i])));
                    scale = std::max(scale, std::abs(want(g.points[i])));
                }
                CHECK(err <= 1e-8 * (1.0 + scale));
            }
        }
    }
}

TEST_CASE("low-degree polynomials are reproduced to 1e-10 relative") {
    const int n = 64;
    const auto g = cheb_points(n, 1.0);
    const auto d1 = diff_matrix(n, 1, 1.0);
    std::vector<double> f;
    for (double x : g.points) f.push_back(x * x * x);
    const auto got = matvec(d1.entries, f);
    for (std::size_t i = 0; i < got.size(); ++i) {
        const double want = 3.0 * g.points[i] * g.points[i];
        CHECK(std::abs(got[i] - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("scaling covariance D(N, l, L) = D(N, l, 1) / L^l") {
    for (int n : {4, 17, 64}) {
        for (int order : {1, 2}) {
            const double L = 6.0;
            const auto ref = diff_matrix(n, order, 1.0);
            const auto scaled = diff_matrix(n, order, L);
            const double factor = std::pow(L, order);
            for (std::size_t i = 0; i < ref.entries.rows(); ++i)
                for (std::size_t j = 0; j < ref.entries.cols(); ++j) {
                    const double want = ref.entries(i, j) / factor;
                    CHECK(std::abs(scaled.entries(i, j) - want) <= 1e-14 * std::abs(want) + 1e-300);
                }
        }
    }
}

TEST_CASE("barycentric_eval examples") {
    const auto g = cheb_points(4, 1.0);
    std::vector<Complex> ones(5, Complex(1.0, 0.0));
    for (double x : {-1.0, -0.3, 0.0, 0.77, 1.0}) CHECK(std::abs(barycentric_eval(g, ones, x) - 1.0) < 1e-15);

    std::vector<Complex> vals{{1, 2}, {3, -1}, {0.5, 0}, {-2, 1}, {4, 4}};
    for (int j = 0; j <= 4; ++j) CHECK(barycentric_eval(g, vals, g.points[j]) == vals[j]);

    std::vector<Complex> cubic;
    for (double x : g.points) cubic.emplace_back(x * x * x, 0.0);
    CHECK(std::abs(barycentric_eval(g, cubic, 0.5) - 0.125) < 1e-15);
}

TEST_CASE("barycentric_eval on a scaled grid and its refusals") {
    const auto g = cheb_points(10, 6.0);
    std::vector<Complex> f;
    for (double x : g.points) f.emplace_back(x * x, -x);
    const Complex v = barycentric_eval(g, f, 2.5);
    CHECK(std::abs(v - Complex(6.25, -2.5)) < 1e-12);
    CHECK_THROWS_AS((void)barycentric_eval(g, f, 6.5), InvalidArgument);
    CHECK_THROWS_AS((void)barycentric_eval(g, std::vector<Complex>(3), 0.0), InvalidArgument);
}

TEST_CASE("barycentric weights alternate with halved endpoints") {
    const auto w = barycentric_weights(5);
    const std::vector<double> want{0.5, -1.0, 1.0, -1.0, 1.0, -0.5};
    CHECK(w == want);
}

}  // TEST_SUITE
