#include "pseudospec/fit.hpp"

#include "pseudospec/errors.hpp"

namespace pseudospec {

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), "least_squares_line: size mismatch");
    require(x.size() >= 2, "least_squares_line: need at least 2 points");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    require(sxx > 0.0, "least_squares_line: abscissae are all equal");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.residual = squared_residual(x, y, fit.slope, fit.intercept);
    return fit;
}

double squared_residual(std::span<const double> x, std::span<const double> y, double slope, double intercept) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (slope * x[i] + intercept);
        s += r * r;
    }
    return s;
}

}  // namespace pseudospec
