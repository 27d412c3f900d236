#include "pseudospec/linalg.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pseudospec/errors.hpp"
#include "pseudospec/rng.hpp"

namespace pseudospec::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// y -= a * x over n complex entries, written out in reals so the loop
/// vectorizes without the NaN-recovery path of std::complex multiply.
inline void sub_scaled(Complex* y, const Complex* x, Complex a, std::size_t n) {
    auto* yd = reinterpret_cast<double*>(y);
    const auto* xd = reinterpret_cast<const double*>(x);
    const double ar = a.real();
    const double ai = a.imag();
    for (std::size_t k = 0; k < n; ++k) {
        const double xr = xd[2 * k];
        const double xi = xd[2 * k + 1];
        yd[2 * k] -= ar * xr - ai * xi;
        yd[2 * k + 1] -= ar * xi + ai * xr;
    }
}

inline double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

void check_finite(const CMatrix& a, const char* who) {
    for (const Complex& v : a.data()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidArgument(std::string(who) + ": non-finite matrix entry");
    }
}

CVector start_vector(std::size_t n) {
    SplitMix64 gen(IterationLimits::start_seed);
    CVector v(n);
    for (auto& x : v) x = Complex(gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0));
    const double nv = norm2(v);
    for (auto& x : v) x /= nv;
    return v;
}

/// Largest eigenvalue of the symmetric tridiagonal (alpha, beta) by Sturm
/// bisection.
double tridiagonal_top(const std::vector<double>& alpha, const std::vector<double>& beta) {
    const std::size_t k = alpha.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = (i > 0 ? std::abs(beta[i - 1]) : 0.0) + (i + 1 < k ? std::abs(beta[i]) : 0.0);
        lo = std::min(lo, alpha[i] - r);
        hi = std::max(hi, alpha[i] + r);
    }
    const double scale = std::max(std::abs(lo), std::abs(hi));
    auto count_above = [&](double x) {
        std::size_t above = 0;
        double d = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            d = (alpha[i] - x) - (i > 0 ? beta[i - 1] * beta[i - 1] / d : 0.0);
            if (d == 0.0) d = -kEps * scale;
            if (d > 0.0) ++above;
        }
        return above;
    };
    for (int it = 0; it < 200 && hi - lo > 2.0 * kEps * scale; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (count_above(mid) > 0 ? lo : hi) = mid;
    }
    return hi;
}

/// Unit eigenvector of the tridiagonal for eigenvalue theta: two steps of
/// inverse iteration with a partially pivoted tridiagonal solve.
std::vector<double> tridiagonal_vector(const std::vector<double>& alpha, const std::vector<double>& beta,
                                       double theta) {
    const std::size_t k = alpha.size();
    std::vector<double> x(k, 1.0);
    if (k == 1) return x;
    const double tiny = kEps * std::max(std::abs(theta), 1e-300);
    for (int pass = 0; pass < 2; ++pass) {
        // Rows hold (diag, super, super2) after pivoting.
        std::vector<double> d(k);
        std::vector<double> u1(k, 0.0);
        std::vector<double> u2(k, 0.0);
        std::vector<double> l(k, 0.0);
        std::vector<unsigned char> swap(k, 0);
        for (std::size_t i = 0; i < k; ++i) d[i] = alpha[i] - theta;
        for (std::size_t i = 0; i + 1 < k; ++i) u1[i] = beta[i];
        std::vector<double> sub(beta.begin(), beta.end());
        for (std::size_t i = 0; i + 1 < k; ++i) {
            if (std::abs(d[i]) >= std::abs(sub[i])) {
                if (d[i] == 0.0) d[i] = tiny;
                l[i] = sub[i] / d[i];
                d[i + 1] -= l[i] * u1[i];
            } else {
                swap[i] = 1;
                l[i] = d[i] / sub[i];
                d[i] = sub[i];
                const double next_d = d[i + 1];
                const double next_u = i + 2 < k ? u1[i + 1] : 0.0;
                d[i + 1] = u1[i] - l[i] * next_d;
                u1[i] = next_d;
                u2[i] = next_u;
                if (i + 2 < k) u1[i + 1] = -l[i] * next_u;
            }
        }
        if (d[k - 1] == 0.0) d[k - 1] = tiny;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            if (swap[i]) std::swap(x[i], x[i + 1]);
            x[i + 1] -= l[i] * x[i];
        }
        for (std::size_t i = k; i-- > 0;) {
            double s = x[i];
            if (i + 1 < k) s -= u1[i] * x[i + 1];
            if (i + 2 < k) s -= u2[i] * x[i + 2];
            x[i] = s / d[i];
        }
        double nx = 0.0;
        for (double v : x) nx = std::max(nx, std::abs(v));
        for (double& v : x) v /= nx;
    }
    double nrm = 0.0;
    for (double v : x) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (double& v : x) v /= nrm;
    return x;
}

Complex dot(const CVector& a, const CVector& b) {
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// Lanczos with full reorthogonalisation for the largest eigenvalue theta of
/// (A^H A)^{-1}; returns 1/sqrt(theta). Restarts from the Ritz vector every
/// IterationLimits::lanczos_block steps.
template <typename Solve, typename SolveAdjoint>
double lanczos_sigma_min(std::size_t n, Solve&& solve_a, SolveAdjoint&& solve_ah) {
    CVector start = start_vector(n);
    const std::size_t block = std::min<std::size_t>(n, IterationLimits::lanczos_block);
    double theta = 0.0;
    for (int cycle = 0; cycle < IterationLimits::lanczos_restarts; ++cycle) {
        std::vector<CVector> basis;
        std::vector<double> alpha;
        std::vector<double> beta;
        basis.push_back(start);
        for (std::size_t j = 0; j < block; ++j) {
            const CVector w0 = solve_a(basis[j]);
            CVector w = solve_ah(w0);
            for (const Complex& x : w) {
                if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return 0.0;
            }
            alpha.push_back(dot(basis[j], w).real());
            for (int pass = 0; pass < 2; ++pass) {
                for (const CVector& q : basis) {
                    const Complex proj = dot(q, w);
                    for (std::size_t i = 0; i < n; ++i) w[i] -= proj * q[i];
                }
            }
            const double b = norm2(w);
            theta = tridiagonal_top(alpha, beta);
            if (theta <= 0.0) return 0.0;
            const bool exhausted = basis.size() == n || b <= kEps * theta;
            const std::vector<double> y = tridiagonal_vector(alpha, beta, theta);
            const double residual = b * std::abs(y.back());
            if (exhausted || residual <= IterationLimits::residual_tol * theta) return 1.0 / std::sqrt(theta);
            if (j + 1 == block) {
                CVector ritz(n, Complex{});
                for (std::size_t m = 0; m < basis.size(); ++m) {
                    for (std::size_t i = 0; i < n; ++i) ritz[i] += y[m] * basis[m][i];
                }
                const double nr = norm2(ritz);
                for (auto& x : ritz) x /= nr;
                start = std::move(ritz);
                break;
            }
            beta.push_back(b);
            for (auto& x : w) x /= b;
            basis.push_back(std::move(w));
        }
    }
    return 1.0 / std::sqrt(theta);
}

/// Factorization of an upper Hessenberg matrix: adjacent-row pivoting and one
/// multiplier per column.
struct HessenbergLu {
    CMatrix u;
    std::vector<Complex> mult;
    std::vector<unsigned char> swapped;
    bool singular = false;

    HessenbergLu(const CMatrix& h, Complex z) : u(h), mult(h.rows(), Complex{}), swapped(h.rows(), 0) {
        const std::size_t n = u.rows();
        for (std::size_t i = 0; i < n; ++i) u(i, i) -= z;
        const double tol = static_cast<double>(n) * kEps * pseudospec::norm_inf(u);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (std::abs(u(k + 1, k)) > std::abs(u(k, k))) {
                auto rk = u.row(k);
                auto rk1 = u.row(k + 1);
                for (std::size_t j = k; j < n; ++j) std::swap(rk[j], rk1[j]);
                swapped[k] = 1;
            }
            const Complex pivot = u(k, k);
            if (std::abs(pivot) <= tol) {
                singular = true;
                if (pivot == Complex{}) continue;
            }
            const Complex m = u(k + 1, k) / pivot;
            mult[k] = m;
            u(k + 1, k) = Complex{};
            sub_scaled(&u(k + 1, k + 1), &u(k, k + 1), m, n - k - 1);
        }
        if (n > 0 && std::abs(u(n - 1, n - 1)) <= tol) singular = true;
    }

    CVector solve(std::span<const Complex> b) const {
        const std::size_t n = u.rows();
        CVector y(b.begin(), b.end());
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (swapped[k]) std::swap(y[k], y[k + 1]);
            y[k + 1] -= mult[k] * y[k];
        }
        for (std::size_t i = n; i-- > 0;) {
            Complex acc = y[i];
            auto ri = u.row(i);
            for (std::size_t j = i + 1; j < n; ++j) acc -= ri[j] * y[j];
            y[i] = acc / ri[i];
        }
        return y;
    }

    CVector solve_adjoint(std::span<const Complex> b) const {
        const std::size_t n = u.rows();
        CVector y(b.begin(), b.end());
        // U^H y = b, column-oriented so rows of U are read contiguously.
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= std::conj(u(i, i));
            const Complex yi = y[i];
            auto ri = u.row(i);
            for (std::size_t j = i + 1; j < n; ++j) y[j] -= std::conj(ri[j]) * yi;
        }
        for (std::size_t k = n - 1; k-- > 0;) {
            y[k] -= std::conj(mult[k]) * y[k + 1];
            if (swapped[k]) std::swap(y[k], y[k + 1]);
        }
        return y;
    }
};

/// Complex Givens rotation G = [c s; -conj(s) c] with G [a; b] = [r; 0].
struct Givens {
    double c = 1.0;
    Complex s{};
    Complex r{};
};

Givens make_givens(Complex a, Complex b) {
    if (b == Complex{}) return {1.0, Complex{}, a};
    if (a == Complex{}) return {0.0, Complex{1.0, 0.0}, b};
    const double aa = std::abs(a);
    const double norm = std::hypot(aa, std::abs(b));
    const Complex alpha = a / aa;
    return {aa / norm, alpha * std::conj(b) / norm, alpha * norm};
}

void balance(CMatrix& a) {
    const std::size_t n = a.rows();
    constexpr double radix = 2.0;
    constexpr double radix2 = radix * radix;
    bool converged = false;
    int sweeps = 0;
    while (!converged && sweeps++ < 200) {
        converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += abs1(a(j, i));
                r += abs1(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix2;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

}  // namespace

CMatrix LuFactors::lower() const {
    CMatrix l = CMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) l(i, j) = packed(i, j);
    return l;
}

CMatrix LuFactors::upper() const {
    CMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) u(i, j) = packed(i, j);
    return u;
}

CMatrix LuFactors::permutation() const {
    CMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1.0;
    return p;
}

LuFactors lu_decompose(const CMatrix& a) {
    require(a.square(), "lu_decompose: matrix must be square");
    check_finite(a, "lu_decompose");
    const std::size_t n = a.rows();
    LuFactors f{n, a, std::vector<std::size_t>(n), std::nullopt};
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    const double tol = static_cast<double>(n) * kEps * norm_inf(a);
    CMatrix& m = f.packed;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(m(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (p != k) {
            auto rk = m.row(k);
            auto rp = m.row(p);
            std::swap_ranges(rk.begin(), rk.end(), rp.begin());
            std::swap(f.perm[k], f.perm[p]);
        }
        const Complex pivot = m(k, k);
        if (best <= tol && !f.singular_pivot) f.singular_pivot = k;
        if (pivot == Complex{}) continue;
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex l = m(i, k) / pivot;
            m(i, k) = l;
            if (l != Complex{}) sub_scaled(&m(i, k + 1), &m(k, k + 1), l, n - k - 1);
        }
    }
    return f;
}

CVector solve(const LuFactors& f, std::span<const Complex> b) {
    require(b.size() == f.n, "solve: dimension mismatch");
    if (f.singular())
        throw ConvergenceError("solve: factors are singular at pivot " + std::to_string(*f.singular_pivot));
    const std::size_t n = f.n;
    CVector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = b[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = y[i];
        auto ri = f.packed.row(i);
        for (std::size_t j = 0; j < i; ++j) acc -= ri[j] * y[j];
        y[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
        Complex acc = y[i];
        auto ri = f.packed.row(i);
        for (std::size_t j = i + 1; j < n; ++j) acc -= ri[j] * y[j];
        y[i] = acc / ri[i];
    }
    return y;
}

CVector solve_adjoint(const LuFactors& f, std::span<const Complex> b) {
    require(b.size() == f.n, "solve_adjoint: dimension mismatch");
    if (f.singular())
        throw ConvergenceError("solve_adjoint: factors are singular at pivot " +
                               std::to_string(*f.singular_pivot));
    const std::size_t n = f.n;
    CVector y(b.begin(), b.end());
    // U^H y = b
    for (std::size_t i = 0; i < n; ++i) {
        y[i] /= std::conj(f.packed(i, i));
        const Complex yi = y[i];
        auto ri = f.packed.row(i);
        for (std::size_t j = i + 1; j < n; ++j) y[j] -= std::conj(ri[j]) * yi;
    }
    // L^H w = y
    for (std::size_t i = n; i-- > 0;) {
        const Complex wi = y[i];
        auto ri = f.packed.row(i);
        for (std::size_t j = 0; j < i; ++j) y[j] -= std::conj(ri[j]) * wi;
    }
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[f.perm[i]] = y[i];
    return x;
}

CMatrix hessenberg(const CMatrix& input) {
    require(input.square(), "hessenberg: matrix must be square");
    CMatrix a = input;
    const std::size_t n = a.rows();
    if (n < 3) return a;
    CVector v(n);
    CVector s(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        double xnorm = 0.0;
        {
            CVector x(m);
            for (std::size_t i = 0; i < m; ++i) x[i] = a(k + 1 + i, k);
            xnorm = norm2(x);
        }
        if (xnorm == 0.0) continue;
        const Complex x0 = a(k + 1, k);
        const Complex phase = (x0 == Complex{}) ? Complex{1.0, 0.0} : x0 / std::abs(x0);
        const Complex alpha = -phase * xnorm;
        for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
        v[0] -= alpha;
        const double vnorm = norm2(std::span<const Complex>(v.data(), m));
        if (vnorm == 0.0) continue;
        for (std::size_t i = 0; i < m; ++i) v[i] /= vnorm;

        // Left: rows k+1.., columns k..  A -= 2 v (v^H A)
        std::fill(s.begin(), s.end(), Complex{});
        for (std::size_t i = 0; i < m; ++i) {
            const Complex cv = std::conj(v[i]);
            auto ri = a.row(k + 1 + i);
            for (std::size_t j = k; j < n; ++j) s[j] += cv * ri[j];
        }
        for (std::size_t i = 0; i < m; ++i) {
            const Complex f = 2.0 * v[i];
            sub_scaled(&a(k + 1 + i, k), &s[k], f, n - k);
        }
        // Right: all rows, columns k+1..  A -= 2 (A v) v^H
        for (std::size_t i = 0; i < n; ++i) {
            auto ri = a.row(i);
            Complex t{};
            for (std::size_t j = 0; j < m; ++j) t += ri[k + 1 + j] * v[j];
            t *= 2.0;
            for (std::size_t j = 0; j < m; ++j) ri[k + 1 + j] -= t * std::conj(v[j]);
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = Complex{};
    }
    return a;
}

EigenDecomposition eigenvalues(const CMatrix& input) {
    require(input.square() && input.rows() >= 1, "eigenvalues: need a non-empty square matrix");
    check_finite(input, "eigenvalues");
    const std::size_t n = input.rows();
    CMatrix balanced = input;
    balance(balanced);
    CMatrix h = hessenberg(balanced);

    std::vector<Complex> eig(n);
    const long cap = 30L * static_cast<long>(n);
    long total = 0;
    int its = 0;
    std::size_t hi = n - 1;
    for (;;) {
        // Find the start l of the unreduced block ending at hi.
        std::size_t l = hi;
        while (l > 0) {
            const double sub = abs1(h(l, l - 1));
            double diag = abs1(h(l - 1, l - 1)) + abs1(h(l, l));
            if (diag == 0.0) {
                for (std::size_t i = l - 1; i <= hi; ++i) diag += abs1(h(i, i));
            }
            if (sub <= kEps * diag) {
                h(l, l - 1) = Complex{};
                break;
            }
            --l;
        }
        if (l == hi) {
            eig[hi] = h(hi, hi);
            its = 0;
            if (hi == 0) break;
            --hi;
            continue;
        }
        if (++total > cap)
            throw ConvergenceError("eigenvalues: QR iteration cap (30n) reached at index " + std::to_string(hi));
        ++its;

        Complex shift;
        if (its == 10) {
            shift = h(l, l) + 0.75 * std::abs(h(l + 1, l).real());
        } else if (its == 20) {
            shift = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1).real());
        } else {
            const Complex a = h(hi - 1, hi - 1);
            const Complex b = h(hi - 1, hi);
            const Complex c = h(hi, hi - 1);
            const Complex d = h(hi, hi);
            const Complex p = 0.5 * (a - d);
            Complex disc = std::sqrt(p * p + b * c);
            if ((std::conj(p) * disc).real() < 0.0) disc = -disc;
            const Complex denom = p + disc;
            shift = (denom == Complex{}) ? d : d - (b * c) / denom;
        }

        // Implicit single-shift sweep over the active block [l, hi].
        Complex x = h(l, l) - shift;
        Complex y = h(l + 1, l);
        for (std::size_t k = l; k < hi; ++k) {
            if (k > l) {
                x = h(k, k - 1);
                y = h(k + 1, k - 1);
            }
            const Givens g = make_givens(x, y);
            if (k > l) {
                h(k, k - 1) = g.r;
                h(k + 1, k - 1) = Complex{};
            }
            const Complex sc = std::conj(g.s);
            for (std::size_t j = k; j <= hi; ++j) {
                const Complex t1 = h(k, j);
                const Complex t2 = h(k + 1, j);
                h(k, j) = g.c * t1 + g.s * t2;
                h(k + 1, j) = -sc * t1 + g.c * t2;
            }
            const std::size_t last = std::min(k + 2, hi);
            for (std::size_t i = l; i <= last; ++i) {
                const Complex t1 = h(i, k);
                const Complex t2 = h(i, k + 1);
                h(i, k) = g.c * t1 + sc * t2;
                h(i, k + 1) = -g.s * t1 + g.c * t2;
            }
        }
    }
    return EigenDecomposition{std::move(eig)};
}

ShiftedSigmaMin::ShiftedSigmaMin(const CMatrix& a) {
    require(a.square() && a.rows() >= 1, "ShiftedSigmaMin: need a non-empty square matrix");
    check_finite(a, "ShiftedSigmaMin");
    h_ = hessenberg(a);
    norm_inf_ = pseudospec::norm_inf(a);
}

double ShiftedSigmaMin::operator()(Complex z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidArgument("sigma_min: non-finite shift");
    const HessenbergLu lu(h_, z);
    if (lu.singular) return 0.0;
    return lanczos_sigma_min(
        h_.rows(), [&](const CVector& v) { return lu.solve(v); },
        [&](const CVector& w) { return lu.solve_adjoint(w); });
}

std::vector<double> backward_errors(const CMatrix& a, const EigenDecomposition& eig) {
    const double scale = matrix_two_norm(a);
    const ShiftedSigmaMin sigma(a);
    std::vector<double> out;
    out.reserve(eig.eigenvalues.size());
    for (const Complex& lambda : eig.eigenvalues) out.push_back(scale == 0.0 ? 0.0 : sigma(lambda) / scale);
    return out;
}

double smallest_singular_value(const CMatrix& a) {
    require(a.square() && a.rows() >= 1, "smallest_singular_value: need a non-empty square matrix");
    const LuFactors f = lu_decompose(a);
    if (f.singular()) return 0.0;
    return lanczos_sigma_min(
        f.n, [&](const CVector& v) { return solve(f, v); },
        [&](const CVector& w) { return solve_adjoint(f, w); });
}

double matrix_two_norm(const CMatrix& a) {
    check_finite(a, "matrix_two_norm");
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const CMatrix ah = adjoint(a);
    CVector v = start_vector(a.cols());
    double previous = 0.0;
    double sigma = 0.0;
    for (int it = 0; it < IterationLimits::power_cap; ++it) {
        const CVector w = multiply(a, v);
        const double wn = norm2(w);
        if (wn == 0.0) {
            // v may be in the null space only by accident; a zero matrix stays zero.
            bool zero = true;
            for (const Complex& x : a.data()) zero = zero && x == Complex{};
            if (zero) return 0.0;
            v = start_vector(a.cols());
            v[it % v.size()] += 1.0;
            continue;
        }
        const CVector u = multiply(ah, w);
        const double rho = wn * wn;
        sigma = wn;
        CVector r(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] - rho * v[i];
        const double residual = norm2(r) / rho;
        if (residual <= IterationLimits::residual_tol ||
            std::abs(sigma - previous) <= IterationLimits::change_tol * sigma)
            return sigma;
        previous = sigma;
        const double un = norm2(u);
        for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] / un;
    }
    return sigma;
}

double inverse_two_norm(const CMatrix& a) {
    const LuFactors f = lu_decompose(a);
    if (f.singular()) return std::numeric_limits<double>::infinity();
    const std::size_t n = f.n;
    CMatrix inv(n, n);
    CVector e(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), Complex{});
        e[j] = 1.0;
        const CVector col = solve(f, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return matrix_two_norm(inv);
}

CVector eigenvector(const CMatrix& a, Complex lambda) {
    require(a.square() && a.rows() >= 1, "eigenvector: need a non-empty square matrix");
    const std::size_t n = a.rows();
    const double nrm = norm_inf(a);
    Complex shift = lambda;
    LuFactors f = lu_decompose(shifted(a, shift));
    for (int bump = 1; f.singular() && bump < 8; ++bump) {
        shift = lambda + Complex(1.0, 1.0) * (std::pow(10.0, bump) * kEps * std::max(nrm, 1.0));
        f = lu_decompose(shifted(a, shift));
    }
    if (f.singular()) throw ConvergenceError("eigenvector: shifted matrix stays singular");
    CVector v = start_vector(n);
    for (int it = 0; it < 6; ++it) {
        CVector w = solve(f, v);
        const double wn = norm2(w);
        if (!std::isfinite(wn) || wn == 0.0) throw ConvergenceError("eigenvector: iterate blew up");
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
    }
    return v;
}

}  // namespace pseudospec::linalg
