#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace topomode::io {

struct Curve {
    std::vector<double> x, y;
    std::string x_label, y_label, title;
};

namespace svg_detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

} // namespace svg_detail

/// Self-contained line plot; identical input produces identical bytes.
inline std::string render_plot(const Curve& curve) {
    if (curve.x.size() != curve.y.size())
        throw std::invalid_argument("plot: x/y length mismatch");
    if (curve.x.size() < 2) throw std::invalid_argument("plot: need at least two points");
    for (std::size_t i = 0; i < curve.x.size(); ++i)
        if (!std::isfinite(curve.x[i]) || !std::isfinite(curve.y[i]))
            throw std::invalid_argument("plot: non-finite point");

    const double width = 640, height = 480;
    const double ml = 70, mr = 20, mt = 40, mb = 50;

    double x_lo = *std::min_element(curve.x.begin(), curve.x.end());
    double x_hi = *std::max_element(curve.x.begin(), curve.x.end());
    double y_lo = *std::min_element(curve.y.begin(), curve.y.end());
    double y_hi = *std::max_element(curve.y.begin(), curve.y.end());
    if (x_hi == x_lo) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi == y_lo) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    const double ypad = 0.05 * (y_hi - y_lo);
    y_lo -= ypad;
    y_hi += ypad;

    auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb); };

    using svg_detail::num;
    using svg_detail::tick;
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
    s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    s += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" + curve.title + "</text>\n";

    // frame
    s += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(width - ml - mr) +
         "\" height=\"" + num(height - mt - mb) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // ticks
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 5;
        const double yv = y_lo + (y_hi - y_lo) * i / 5;
        s += "<line x1=\"" + num(px(xv)) + "\" y1=\"" + num(height - mb) + "\" x2=\"" +
             num(px(xv)) + "\" y2=\"" + num(height - mb + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(height - mb + 18) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick(xv) +
             "</text>\n";
        s += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(py(yv)) + "\" x2=\"" + num(ml) +
             "\" y2=\"" + num(py(yv)) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(ml - 8) + "\" y=\"" + num(py(yv) + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + tick(yv) +
             "</text>\n";
    }
    s += "<text x=\"" + num(0.5 * (ml + width - mr)) + "\" y=\"" + num(height - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         curve.x_label + "</text>\n";
    s += "<text x=\"16\" y=\"" + num(0.5 * (mt + height - mb)) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " + num(0.5 * (mt + height - mb)) + ")\">" + curve.y_label +
         "</text>\n";

    s += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        if (i) s += ' ';
        s += num(px(curve.x[i])) + "," + num(py(curve.y[i]));
    }
    s += "\"/>\n</svg>\n";
    return s;
}

inline void emit_plot(const Curve& curve, const std::string& path) {
    const std::string body = render_plot(curve);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("plot: cannot open " + path);
    out << body;
    if (!out) throw std::runtime_error("plot: write failed for " + path);
}

} // namespace topomode::io
