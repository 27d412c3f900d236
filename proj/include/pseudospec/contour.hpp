#pragma once

#include <vector>

#include "pseudospec/matrix.hpp"
#include "pseudospec/pseudospectra.hpp"

namespace pseudospec {

struct Polyline {
    std::vector<Complex> points;
    bool closed = false;
};

struct ContourLevel {
    double eps = 0.0;
    std::vector<Polyline> lines;
};

/// Floor applied to sigma_min before taking log10.
inline constexpr double kSigmaFloor = 1e-16;

/// Marching-squares level sets of log10(max(sigma_min, 1e-16)) at each eps.
/// Levels must be positive and strictly descending. The field is padded with
/// +inf outside the window, so every line is closed and a level above the
/// field maximum yields the window boundary. An empty level set gives an
/// empty line list.
[[nodiscard]] std::vector<ContourLevel> contours(const PseudospectrumField& field, const std::vector<double>& eps_levels);

/// Even-odd rule against the closed polygon through the line's points.
[[nodiscard]] bool point_in_polygon(const Polyline& line, Complex z);

}  // namespace pseudospec
