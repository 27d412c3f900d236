#include "pseudospec/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>

#include "pseudospec/errors.hpp"

namespace pseudospec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Field padded by one ring of +inf; pad nodes reuse the boundary coordinates.
class PaddedGrid {
public:
    PaddedGrid(const PseudospectrumField& field) : window_(field.window), w_(field.window.nx + 2), h_(field.window.ny + 2) {
        values_.assign(static_cast<std::size_t>(w_) * h_, kInf);
        for (int iy = 0; iy < window_.ny; ++iy) {
            for (int ix = 0; ix < window_.nx; ++ix) {
                values_[index(ix + 1, iy + 1)] = std::log10(std::max(field.at(ix, iy), kSigmaFloor));
            }
        }
    }

    [[nodiscard]] int width() const { return w_; }
    [[nodiscard]] int height() const { return h_; }
    [[nodiscard]] double value(int i, int j) const { return values_[index(i, j)]; }
    [[nodiscard]] Complex point(int i, int j) const {
        return window_.point(std::clamp(i - 1, 0, window_.nx - 1), std::clamp(j - 1, 0, window_.ny - 1));
    }

private:
    [[nodiscard]] std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * w_ + i; }

    ComplexWindow window_;
    int w_;
    int h_;
    std::vector<double> values_;
};

// Edge (i, j, 0) joins nodes (i, j)-(i+1, j); (i, j, 1) joins (i, j)-(i, j+1).
struct EdgeKey {
    int i;
    int j;
    int o;
    auto operator<=>(const EdgeKey&) const = default;
};

class LevelTracer {
public:
    LevelTracer(const PaddedGrid& grid, double threshold) : grid_(grid), t_(threshold) {}

    std::vector<Polyline> trace() {
        for (int j = 0; j + 1 < grid_.height(); ++j) {
            for (int i = 0; i + 1 < grid_.width(); ++i) cell(i, j);
        }
        return chain();
    }

private:
    [[nodiscard]] bool inside(int i, int j) const { return grid_.value(i, j) <= t_; }

    [[nodiscard]] Complex crossing(const EdgeKey& e) const {
        const int i1 = e.o == 0 ? e.i + 1 : e.i;
        const int j1 = e.o == 0 ? e.j : e.j + 1;
        const double v0 = grid_.value(e.i, e.j);
        const double v1 = grid_.value(i1, j1);
        double f = 0.0;
        if (std::isinf(v1)) {
            f = 0.0;
        } else if (std::isinf(v0)) {
            f = 1.0;
        } else if (v1 != v0) {
            f = std::clamp((t_ - v0) / (v1 - v0), 0.0, 1.0);
        }
        const Complex p0 = grid_.point(e.i, e.j);
        const Complex p1 = grid_.point(i1, j1);
        return p0 + f * (p1 - p0);
    }

    void add_segment(const EdgeKey& a, const EdgeKey& b) {
        const auto id = static_cast<int>(segments_.size());
        segments_.emplace_back(a, b);
        incident_[a].push_back(id);
        incident_[b].push_back(id);
    }

    void cell(int i, int j) {
        // Corners counter-clockwise from (i, j); edge k joins corner k and k+1.
        const bool in[4] = {inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)};
        const EdgeKey edge[4] = {{i, j, 0}, {i + 1, j, 1}, {i, j + 1, 0}, {i, j, 1}};
        int crossings[4];
        int count = 0;
        for (int k = 0; k < 4; ++k) {
            if (in[k] != in[(k + 1) % 4]) crossings[count++] = k;
        }
        if (count == 2) {
            add_segment(edge[crossings[0]], edge[crossings[1]]);
        } else if (count == 4) {
            const double centre = 0.25 * (grid_.value(i, j) + grid_.value(i + 1, j) + grid_.value(i + 1, j + 1) +
                                          grid_.value(i, j + 1));
            const bool centre_in = centre <= t_;
            // Cut off the corners whose state differs from the centre.
            for (int k = 0; k < 4; ++k) {
                if (in[k] != centre_in) add_segment(edge[(k + 3) % 4], edge[k]);
            }
        }
    }

    std::vector<Polyline> chain() {
        std::vector<bool> used(segments_.size(), false);
        std::vector<Polyline> lines;
        auto walk = [&](int first, const EdgeKey& start) {
            Polyline line;
            EdgeKey at = start;
            int seg = first;
            push(line, crossing(at));
            while (seg >= 0 && !used[static_cast<std::size_t>(seg)]) {
                used[static_cast<std::size_t>(seg)] = true;
                const auto& [a, b] = segments_[static_cast<std::size_t>(seg)];
                at = (a == at) ? b : a;
                push(line, crossing(at));
                seg = -1;
                for (int next : incident_[at]) {
                    if (!used[static_cast<std::size_t>(next)]) {
                        seg = next;
                        break;
                    }
                }
            }
            line.closed = at == start;
            if (line.closed && line.points.size() > 1 && line.points.back() == line.points.front()) {
                line.points.pop_back();
            }
            if (!line.points.empty()) lines.push_back(std::move(line));
        };
        // Open chains start at edges with a single incident segment.
        for (const auto& [key, ids] : incident_) {
            if (ids.size() == 1 && !used[static_cast<std::size_t>(ids[0])]) walk(ids[0], key);
        }
        for (const auto& [key, ids] : incident_) {
            for (int id : ids) {
                if (!used[static_cast<std::size_t>(id)]) walk(id, key);
            }
        }
        return lines;
    }

    static void push(Polyline& line, Complex z) {
        if (line.points.empty() || line.points.back() != z) line.points.push_back(z);
    }

    const PaddedGrid& grid_;
    double t_;
    std::vector<std::pair<EdgeKey, EdgeKey>> segments_;
    std::map<EdgeKey, std::vector<int>> incident_;
};

}  // namespace

std::vector<ContourLevel> contours(const PseudospectrumField& field, const std::vector<double>& eps_levels) {
    field.window.validate();
    require(field.sigma_min.size() == static_cast<std::size_t>(field.window.nx) * field.window.ny,
            "contours: field size does not match its window");
    for (std::size_t k = 0; k < eps_levels.size(); ++k) {
        require(eps_levels[k] > 0.0 && std::isfinite(eps_levels[k]), "contours: levels must be positive and finite");
        require(k == 0 || eps_levels[k] < eps_levels[k - 1], "contours: levels must be strictly descending");
    }
    const PaddedGrid grid(field);
    std::vector<ContourLevel> out;
    out.reserve(eps_levels.size());
    for (double eps : eps_levels) {
        LevelTracer tracer(grid, std::log10(eps));
        out.push_back({eps, tracer.trace()});
    }
    return out;
}

bool point_in_polygon(const Polyline& line, Complex z) {
    const auto& p = line.points;
    bool in = false;
    if (p.size() < 3) return false;
    for (std::size_t i = 0, j = p.size() - 1; i < p.size(); j = i++) {
        const bool straddles = (p[i].imag() > z.imag()) != (p[j].imag() > z.imag());
        if (straddles) {
            const double x = p[j].real() + (z.imag() - p[j].imag()) * (p[i].real() - p[j].real()) /
                                               (p[i].imag() - p[j].imag());
            if (z.real() < x) in = !in;
        }
    }
    return in;
}

}  // namespace pseudospec
