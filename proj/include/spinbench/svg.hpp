// svg.hpp — deterministic polyline plots (same inputs -> byte-identical file)
#pragma once

#include <string>
#include <vector>

#include "spinbench/analysis.hpp"

namespace spinbench {

struct CurveStyle {
    std::string color{"#1f6fb2"};
    bool dashed{false};
};

struct FigureCurve {
    std::string label;
    Series series;
    CurveStyle style;
};

struct FigureSpec {
    std::string title;
    std::string x_label{"t"};
    std::string y_label{"Sz"};
    std::vector<FigureCurve> curves;
    int width{960};
    int height{600};
};

std::string render_svg(const FigureSpec& spec);
void write_svg(const std::string& path, const FigureSpec& spec);

// default palette, cycled over curve index
CurveStyle default_style(std::size_t index);

} // namespace spinbench
