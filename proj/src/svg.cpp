#include "spinbench/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spinbench {

namespace {

std::string fmt(double v, int prec = 2) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    return buf;
}

// tick step = {1,2,5} * 10^k giving 4..9 ticks across the range
double nice_step(double range) {
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r < 1.5) return mag;
    if (r < 3.5) return 2.0 * mag;
    if (r < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

int tick_precision(double step) {
    const int p = -static_cast<int>(std::floor(std::log10(step)));
    return std::max(0, p);
}

} // namespace

CurveStyle default_style(std::size_t index) {
    static const char* colors[] = {"#1f6fb2", "#d1495b", "#3a9e5f", "#e3a72f", "#7a4fa3", "#434b54"};
    CurveStyle st;
    st.color = colors[index % 6];
    st.dashed = index >= 6;
    return st;
}

std::string render_svg(const FigureSpec& spec) {
    if (spec.curves.empty()) throw std::invalid_argument("render_svg: no curves");
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    bool first = true;
    for (const auto& c : spec.curves) {
        validate(c.series); // nonempty, finite
        for (std::size_t i = 0; i < c.series.t.size(); ++i) {
            const double x = c.series.t[i], y = c.series.y[i];
            if (first) {
                x_min = x_max = x;
                y_min = y_max = y;
                first = false;
            }
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) {
        y_max += 0.5;
        y_min -= 0.5;
    }
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double ml = 72, mr = 24, mt = 40, mb = 56;
    const double pw = spec.width - ml - mr;
    const double ph = spec.height - mt - mb;
    const auto X = [&](double x) { return ml + pw * (x - x_min) / (x_max - x_min); };
    const auto Y = [&](double y) { return mt + ph * (1.0 - (y - y_min) / (y_max - y_min)); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
       << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
    os << "<rect width=\"" << spec.width << "\" height=\"" << spec.height << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\""
       << " text-anchor=\"middle\">" << spec.title << "</text>\n";

    // axes, ticks, grid
    os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
    const double xs = nice_step(x_max - x_min);
    for (double x = std::ceil(x_min / xs) * xs; x <= x_max + 1e-9 * xs; x += xs) {
        os << "<line x1=\"" << fmt(X(x)) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(X(x))
           << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << fmt(X(x)) << "\" y=\"" << fmt(mt + ph + 18)
           << "\" text-anchor=\"middle\">" << fmt(x, tick_precision(xs)) << "</text>\n";
    }
    const double ys = nice_step(y_max - y_min);
    for (double y = std::ceil(y_min / ys) * ys; y <= y_max + 1e-9 * ys; y += ys) {
        os << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(Y(y)) << "\" x2=\"" << fmt(ml + pw)
           << "\" y2=\"" << fmt(Y(y)) << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(Y(y) + 4)
           << "\" text-anchor=\"end\">" << fmt(y, tick_precision(ys)) << "</text>\n";
    }
    os << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\"" << fmt(pw)
       << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(mt + ph + 40)
       << "\" text-anchor=\"middle\">" << spec.x_label << "</text>\n";
    os << "<text x=\"18\" y=\"" << fmt(mt + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << fmt(mt + ph / 2) << ")\">" << spec.y_label << "</text>\n";
    os << "</g>\n";

    for (const auto& c : spec.curves) {
        os << "<polyline fill=\"none\" stroke=\"" << c.style.color << "\" stroke-width=\"1.5\"";
        if (c.style.dashed) os << " stroke-dasharray=\"6 4\"";
        os << " points=\"";
        for (std::size_t i = 0; i < c.series.t.size(); ++i) {
            if (i) os << " ";
            os << fmt(X(c.series.t[i]), 3) << "," << fmt(Y(c.series.y[i]), 3);
        }
        os << "\"/>\n";
    }

    // legend
    os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    double ly = mt + 14;
    for (const auto& c : spec.curves) {
        os << "<line x1=\"" << fmt(ml + pw - 150) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
           << fmt(ml + pw - 122) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << c.style.color
           << "\" stroke-width=\"2\"";
        if (c.style.dashed) os << " stroke-dasharray=\"6 4\"";
        os << "/>\n";
        os << "<text x=\"" << fmt(ml + pw - 116) << "\" y=\"" << fmt(ly) << "\">" << c.label
           << "</text>\n";
        ly += 18;
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

void write_svg(const std::string& path, const FigureSpec& spec) {
    const std::string body = render_svg(spec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_svg: cannot write '" + path + "'");
    out << body;
}

} // namespace spinbench
