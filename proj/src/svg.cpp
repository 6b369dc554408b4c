#include "survival/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace survival {

namespace {

struct Box {
    double x0, y0, x1, y1;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// map log10 coordinates into the pixel box (y grows downward)
double px(double lx, double lo, double hi, const Box& b) {
    return b.x0 + (lx - lo) / (hi - lo) * (b.x1 - b.x0);
}
double py(double ly, double lo, double hi, const Box& b) {
    return b.y1 - (ly - lo) / (hi - lo) * (b.y1 - b.y0);
}

void polyline(std::ofstream& out, const std::vector<double>& xs, const std::vector<double>& ys,
              const std::string& color, double width) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
        << "\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) out << num(xs[i]) << ',' << num(ys[i]) << ' ';
    out << "\"/>\n";
}

}  // namespace

void emit_svg(const SvgFigure& fig, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path);

    const double W = 760, H = 540;
    const Box plot{70, 40, W - 30, H - 55};

    double lt_min = std::numeric_limits<double>::max(), lt_max = -lt_min;
    double lp_min = std::numeric_limits<double>::max(), lp_max = -lp_min;
    for (const auto& c : fig.curves)
        for (std::size_t i = 0; i < c.t.size(); ++i) {
            if (c.t[i] <= 0.0 || c.p[i] <= 0.0) continue;
            lt_min = std::min(lt_min, std::log10(c.t[i]));
            lt_max = std::max(lt_max, std::log10(c.t[i]));
            lp_min = std::min(lp_min, std::log10(c.p[i]));
            lp_max = std::max(lp_max, std::log10(c.p[i]));
        }
    if (lt_min >= lt_max) throw DomainError("emit_svg: no positive data to plot");
    lp_min = std::max(lp_min, lp_max - 16.0);  // clamp dynamic range
    lp_min = std::floor(lp_min);
    lp_max = std::ceil(lp_max + 0.05);

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << 0.5 * W << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << fig.title << "</text>\n";

    // frame
    out << "<rect x=\"" << plot.x0 << "\" y=\"" << plot.y0 << "\" width=\"" << plot.x1 - plot.x0
        << "\" height=\"" << plot.y1 - plot.y0
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // decade ticks
    for (int d = static_cast<int>(std::ceil(lt_min)); d <= static_cast<int>(std::floor(lt_max));
         ++d) {
        const double x = px(d, lt_min, lt_max, plot);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << plot.y1 << "\" x2=\"" << num(x)
            << "\" y2=\"" << plot.y1 + 5 << "\" stroke=\"#333333\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << plot.y1 + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1e" << d
            << "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(lp_min)); d <= static_cast<int>(std::floor(lp_max));
         ++d) {
        if ((d % 2) != 0 && lp_max - lp_min > 8) continue;
        const double y = py(d, lp_min, lp_max, plot);
        out << "<line x1=\"" << plot.x0 - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << plot.x0
            << "\" y2=\"" << num(y) << "\" stroke=\"#333333\"/>\n";
        out << "<text x=\"" << plot.x0 - 8 << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << d
            << "</text>\n";
    }
    out << "<text x=\"" << 0.5 * (plot.x0 + plot.x1) << "\" y=\"" << plot.y1 + 40
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">t  [hbar/V]"
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << 0.5 * (plot.y0 + plot.y1)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << 0.5 * (plot.y0 + plot.y1) << ")\">P00(t)</text>\n";

    // curves
    int legend_row = 0;
    for (const auto& c : fig.curves) {
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < c.t.size(); ++i) {
            if (c.t[i] <= 0.0 || c.p[i] <= 0.0) continue;
            const double lp = std::max(std::log10(c.p[i]), lp_min);
            xs.push_back(px(std::log10(c.t[i]), lt_min, lt_max, plot));
            ys.push_back(py(lp, lp_min, lp_max, plot));
        }
        polyline(out, xs, ys, c.color, 1.3);
        if (!c.label.empty()) {
            const double lx = plot.x0 + 14, ly = plot.y0 + 18 + 16 * legend_row++;
            out << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 22
                << "\" y2=\"" << ly - 4 << "\" stroke=\"" << c.color
                << "\" stroke-width=\"2\"/>\n";
            out << "<text x=\"" << lx + 28 << "\" y=\"" << ly
                << "\" font-family=\"sans-serif\" font-size=\"12\">" << c.label << "</text>\n";
        }
    }

    // crossover marker
    if (fig.marker_t > 0.0) {
        const double x = px(std::log10(fig.marker_t), lt_min, lt_max, plot);
        out << "<g id=\"t_R-marker\">\n";
        out << "<line x1=\"" << num(x) << "\" y1=\"" << plot.y0 << "\" x2=\"" << num(x)
            << "\" y2=\"" << plot.y1
            << "\" stroke=\"#aa2222\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
        out << "<text x=\"" << num(x + 5) << "\" y=\"" << plot.y0 + 14
            << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#aa2222\">"
            << (fig.marker_label.empty() ? "t_R" : fig.marker_label) << "</text>\n";
        out << "</g>\n";
    }

    // inset with linear axes (tail modulation zoom)
    if (fig.has_inset && fig.inset.t.size() > 1) {
        const Box ib{plot.x0 + 0.08 * (plot.x1 - plot.x0), plot.y0 + 30,
                     plot.x0 + 0.46 * (plot.x1 - plot.x0), plot.y0 + 150};
        double t0 = fig.inset.t.front(), t1 = fig.inset.t.back();
        double p0 = *std::min_element(fig.inset.p.begin(), fig.inset.p.end());
        double p1 = *std::max_element(fig.inset.p.begin(), fig.inset.p.end());
        if (p1 <= p0) p1 = p0 + 1.0;
        out << "<rect x=\"" << ib.x0 << "\" y=\"" << ib.y0 << "\" width=\"" << ib.x1 - ib.x0
            << "\" height=\"" << ib.y1 - ib.y0
            << "\" fill=\"#fbfbfb\" stroke=\"#888888\" stroke-width=\"0.8\"/>\n";
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < fig.inset.t.size(); ++i) {
            xs.push_back(ib.x0 + (fig.inset.t[i] - t0) / (t1 - t0) * (ib.x1 - ib.x0));
            ys.push_back(ib.y1 - (fig.inset.p[i] - p0) / (p1 - p0) * (ib.y1 - ib.y0));
        }
        polyline(out, xs, ys, "#1f4e99", 1.0);
        out << "<text x=\"" << 0.5 * (ib.x0 + ib.x1) << "\" y=\"" << ib.y0 - 5
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fig.inset.title << "</text>\n";
    }

    out << "</svg>\n";
    if (!out) throw DomainError("write failed for " + path);
}

void emit_svg(const SurvivalSeries& series, const std::string& path) {
    SvgFigure fig;
    SvgCurve c;
    c.t = series.times;
    c.p = series.p00;
    c.label = method_name(series.method);
    fig.curves.push_back(std::move(c));
    emit_svg(fig, path);
}

}  // namespace survival
