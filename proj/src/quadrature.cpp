#include "pseudospec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pseudospec::quadrature {

namespace {

struct Panel {
    double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

class Integrator {
public:
    explicit Integrator(const std::function<double(double)>& f) : f_(f) {}

    double eval(double x) {
        ++result.evaluations;
        return f_(x);
    }

    double recurse(const Panel& p, double tol, int depth) {
        const double m = 0.5 * (p.a + p.b);
        const double lm = 0.5 * (p.a + m);
        const double rm = 0.5 * (m + p.b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = simpson(p.a, m, p.fa, flm, p.fm);
        const double right = simpson(m, p.b, p.fm, frm, p.fb);
        const double delta = left + right - p.whole;
        if (std::abs(delta) <= 15.0 * tol || depth <= 0 || m <= p.a || m >= p.b) {
            if (std::abs(delta) > 15.0 * tol) result.converged = false;
            result.error += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return recurse({p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
               recurse({m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
    }

    Result result;

private:
    const std::function<double(double)>& f_;
};

}  // namespace

Result adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol,
                        int max_depth) {
    if (a == b) return {};
    const double sign = (b > a) ? 1.0 : -1.0;
    if (b < a) std::swap(a, b);

    // A coarse 16-panel pass sets the scale for the relative tolerance.
    constexpr int coarse = 16;
    std::vector<double> xs(2 * coarse + 1);
    std::vector<double> fs(xs.size());
    Integrator probe(f);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = a + (b - a) * static_cast<double>(i) / (2.0 * coarse);
        fs[i] = probe.eval(xs[i]);
    }
    double estimate = 0.0;
    for (int k = 0; k < coarse; ++k) estimate += simpson(xs[2 * k], xs[2 * k + 2], fs[2 * k], fs[2 * k + 1], fs[2 * k + 2]);

    const double tol = std::max(abs_tol, rel_tol * std::abs(estimate)) / coarse;
    Integrator integ(f);
    integ.result.evaluations = probe.result.evaluations;
    double total = 0.0;
    for (int k = 0; k < coarse; ++k) {
        const Panel p{xs[2 * k], xs[2 * k + 2], fs[2 * k], fs[2 * k + 1], fs[2 * k + 2],
                      simpson(xs[2 * k], xs[2 * k + 2], fs[2 * k], fs[2 * k + 1], fs[2 * k + 2])};
        total += integ.recurse(p, tol, max_depth);
    }
    integ.result.value = sign * total;
    return integ.result;
}

}  // namespace pseudospec::quadrature
