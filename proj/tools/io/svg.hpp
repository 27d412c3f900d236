#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pseudospec::io {

using Point = std::pair<double, double>;

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
};

/// Self-contained SVG: one plot area with linear axes, tick labels, legend
/// and a <metadata> block. Drawing is clipped to the plot area.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label, AxisRange x, AxisRange y, int width = 720,
            int height = 560);

    void line(const std::vector<Point>& points, std::string_view color, double stroke = 1.2, bool closed = false,
              std::string_view dash = {});
    void markers(const std::vector<Point>& points, std::string_view color, double radius = 3.0, bool cross = false);
    void legend(std::string label, std::string color, bool marker = false);
    void set_metadata(std::string text) { metadata_ = std::move(text); }

    [[nodiscard]] std::string render() const;

private:
    [[nodiscard]] double px(double x) const;
    [[nodiscard]] double py(double y) const;

    std::string title_;
    std::string x_label_;
    std::string y_label_;
    AxisRange x_;
    AxisRange y_;
    int width_;
    int height_;
    std::string body_;
    std::vector<std::pair<std::string, std::pair<std::string, bool>>> legend_;
    std::string metadata_;
};

/// Ticks at 1, 2 or 5 times a power of ten, about `target` of them.
[[nodiscard]] std::vector<double> nice_ticks(AxisRange range, int target = 6);

[[nodiscard]] std::string xml_escape(std::string_view text);

}  // namespace pseudospec::io
