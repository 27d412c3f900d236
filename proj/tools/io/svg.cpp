#include "io/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "io/csv.hpp"

namespace pseudospec::io {

namespace {

constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

std::string fixed(double v, int digits = 2) {
    if (!std::isfinite(v)) v = 0.0;
    if (v == 0.0) v = 0.0;  // drop negative zero
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

std::string tick_label(double v) {
    if (std::abs(v) < 1e-12) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::vector<double> nice_ticks(AxisRange range, int target) {
    const double span = range.hi - range.lo;
    if (!(span > 0.0) || !std::isfinite(span)) return {range.lo};
    const double raw = span / std::max(target, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> ticks;
    const double first = std::ceil(range.lo / step - 1e-9) * step;
    for (double t = first; t <= range.hi + 1e-9 * step; t += step) ticks.push_back(t);
    return ticks;
}

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label, AxisRange x, AxisRange y, int width,
                 int height)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)),
      x_(x),
      y_(y),
      width_(width),
      height_(height) {
    if (!(x_.hi > x_.lo) || !(y_.hi > y_.lo)) throw std::invalid_argument("svg: empty axis range");
}

double SvgPlot::px(double x) const { return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * (width_ - kLeft - kRight); }

double SvgPlot::py(double y) const { return height_ - kBottom - (y - y_.lo) / (y_.hi - y_.lo) * (height_ - kTop - kBottom); }

void SvgPlot::line(const std::vector<Point>& points, std::string_view color, double stroke, bool closed,
                   std::string_view dash) {
    if (points.size() < 2) return;
    body_ += closed ? "<polygon" : "<polyline";
    body_ += " fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"" + fixed(stroke) + "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + std::string(dash) + "\"";
    body_ += " points=\"";
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (k > 0) body_ += ' ';
        body_ += fixed(px(points[k].first)) + ',' + fixed(py(points[k].second));
    }
    body_ += "\"/>\n";
}

void SvgPlot::markers(const std::vector<Point>& points, std::string_view color, double radius, bool cross) {
    for (const auto& [x, y] : points) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        const std::string cx = fixed(px(x));
        const std::string cy = fixed(py(y));
        if (cross) {
            const double r = radius;
            body_ += "<path stroke=\"" + std::string(color) + "\" stroke-width=\"1.2\" d=\"M" + fixed(px(x) - r) + ' ' +
                     fixed(py(y) - r) + "L" + fixed(px(x) + r) + ' ' + fixed(py(y) + r) + "M" + fixed(px(x) - r) +
                     ' ' + fixed(py(y) + r) + "L" + fixed(px(x) + r) + ' ' + fixed(py(y) - r) + "\"/>\n";
        } else {
            body_ += "<circle cx=\"" + cx + "\" cy=\"" + cy + "\" r=\"" + fixed(radius) + "\" fill=\"" +
                     std::string(color) + "\"/>\n";
        }
    }
}

void SvgPlot::legend(std::string label, std::string color, bool marker) {
    legend_.push_back({std::move(label), {std::move(color), marker}});
}

std::string SvgPlot::render() const {
    const double x0 = kLeft;
    const double x1 = width_ - kRight;
    const double y0 = kTop;
    const double y1 = height_ - kBottom;
    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_) + "\" height=\"" +
         std::to_string(height_) + "\" viewBox=\"0 0 " + std::to_string(width_) + ' ' + std::to_string(height_) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    if (!metadata_.empty()) s += "<metadata>" + xml_escape(metadata_) + "</metadata>\n";
    s += "<defs><clipPath id=\"plot\"><rect x=\"" + fixed(x0) + "\" y=\"" + fixed(y0) + "\" width=\"" +
         fixed(x1 - x0) + "\" height=\"" + fixed(y1 - y0) + "\"/></clipPath></defs>\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + fixed(width_ / 2.0) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
         xml_escape(title_) + "</text>\n";

    for (double t : nice_ticks(x_)) {
        const std::string p = fixed(px(t));
        s += "<line x1=\"" + p + "\" y1=\"" + fixed(y1) + "\" x2=\"" + p + "\" y2=\"" + fixed(y0) +
             "\" stroke=\"#e4e4e4\"/>\n";
        s += "<text x=\"" + p + "\" y=\"" + fixed(y1 + 16) + "\" text-anchor=\"middle\">" + tick_label(t) +
             "</text>\n";
    }
    for (double t : nice_ticks(y_)) {
        const std::string p = fixed(py(t));
        s += "<line x1=\"" + fixed(x0) + "\" y1=\"" + p + "\" x2=\"" + fixed(x1) + "\" y2=\"" + p +
             "\" stroke=\"#e4e4e4\"/>\n";
        s += "<text x=\"" + fixed(x0 - 6) + "\" y=\"" + fixed(py(t) + 4) + "\" text-anchor=\"end\">" +
             tick_label(t) + "</text>\n";
    }
    s += "<rect x=\"" + fixed(x0) + "\" y=\"" + fixed(y0) + "\" width=\"" + fixed(x1 - x0) + "\" height=\"" +
         fixed(y1 - y0) + "\" fill=\"none\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fixed((x0 + x1) / 2) + "\" y=\"" + fixed(height_ - 16.0) + "\" text-anchor=\"middle\">" +
         xml_escape(x_label_) + "</text>\n";
    s += "<text transform=\"translate(18," + fixed((y0 + y1) / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         xml_escape(y_label_) + "</text>\n";

    s += "<g clip-path=\"url(#plot)\">\n" + body_ + "</g>\n";

    double ly = y0 + 16;
    for (const auto& [label, style] : legend_) {
        const auto& [color, marker] = style;
        const double lx = x1 - 150;
        if (marker) {
            s += "<circle cx=\"" + fixed(lx + 10) + "\" cy=\"" + fixed(ly - 4) + "\" r=\"3\" fill=\"" + color +
                 "\"/>\n";
        } else {
            s += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly - 4) + "\" x2=\"" + fixed(lx + 20) + "\" y2=\"" +
                 fixed(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        }
        s += "<text x=\"" + fixed(lx + 26) + "\" y=\"" + fixed(ly) + "\">" + xml_escape(label) + "</text>\n";
        ly += 16;
    }
    s += "</svg>\n";
    return s;
}

}  // namespace pseudospec::io
