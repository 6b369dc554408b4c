#ifndef SURVIVAL_SVG_HPP
#define SURVIVAL_SVG_HPP

#include <string>
#include <vector>

#include "survival/types.hpp"

namespace survival {

// Self-contained SVG 1.1 log-log survival plot. Curves are clipped to the
// positive quadrant; decade ticks on both axes.
struct SvgCurve {
    std::vector<double> t;
    std::vector<double> p;
    std::string color = "#1f4e99";
    std::string label;
};

struct SvgInset {
    std::vector<double> t;
    std::vector<double> p;
    std::string title;
};

struct SvgFigure {
    std::string title = "survival probability P00";
    std::vector<SvgCurve> curves;
    double marker_t = 0.0;          // vertical marker (e.g. t_R); 0 disables
    std::string marker_label;
    bool has_inset = false;
    SvgInset inset;
};

void emit_svg(const SvgFigure& fig, const std::string& path);

// Convenience: single-series plot.
void emit_svg(const SurvivalSeries& series, const std::string& path);

}  // namespace survival

#endif
