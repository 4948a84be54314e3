#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace tangles {

// Minimal polyline plot renderer.  CSV is the canonical output; the SVG is a
// convenience view with axes, ticks and a legend.
class SvgPlot {
public:
    struct Series {
        std::string label;
        std::vector<double> x;
        std::vector<double> y;
    };

    SvgPlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_series(Series s) { series_.push_back(std::move(s)); }

    std::string str() const {
        constexpr double w = 680, h = 460;
        constexpr double ml = 70, mr = 160, mt = 40, mb = 55;
        double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
        for (const auto& s : series_)
            for (size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                x0 = std::min(x0, s.x[i]);
                x1 = std::max(x1, s.x[i]);
                y0 = std::min(y0, s.y[i]);
                y1 = std::max(y1, s.y[i]);
            }
        if (x0 > x1) { x0 = 0; x1 = 1; }
        if (y0 > y1) { y0 = 0; y1 = 1; }
        if (x1 - x0 < 1e-12) x1 = x0 + 1;
        if (y1 - y0 < 1e-12) y1 = y0 + 1;
        const double pw = w - ml - mr, ph = h - mt - mb;
        const auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * pw; };
        const auto py = [&](double y) { return mt + ph - (y - y0) / (y1 - y0) * ph; };

        static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                        "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
        std::string out;
        char buf[512];
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"680\" height=\"460\" "
               "viewBox=\"0 0 680 460\">\n";
        out += "<rect width=\"680\" height=\"460\" fill=\"white\"/>\n";
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%g\" y=\"24\" font-size=\"15\" font-family=\"sans-serif\" "
                      "text-anchor=\"middle\">%s</text>\n",
                      ml + pw / 2, title_.c_str());
        out += buf;
        // Axes.
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" "
                      "stroke=\"black\"/>\n",
                      ml, mt, pw, ph);
        out += buf;
        // Ticks.
        for (int t = 0; t <= 5; ++t) {
            const double xv = x0 + (x1 - x0) * t / 5.0;
            const double yv = y0 + (y1 - y0) * t / 5.0;
            std::snprintf(buf, sizeof(buf),
                          "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>"
                          "<text x=\"%g\" y=\"%g\" font-size=\"11\" font-family=\"sans-serif\" "
                          "text-anchor=\"middle\">%.4g</text>\n",
                          px(xv), mt + ph, px(xv), mt + ph + 5, px(xv), mt + ph + 18, xv);
            out += buf;
            std::snprintf(buf, sizeof(buf),
                          "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>"
                          "<text x=\"%g\" y=\"%g\" font-size=\"11\" font-family=\"sans-serif\" "
                          "text-anchor=\"end\">%.4g</text>\n",
                          ml - 5, py(yv), ml, py(yv), ml - 8, py(yv) + 4, yv);
            out += buf;
        }
        // Axis labels.
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%g\" y=\"%g\" font-size=\"13\" font-family=\"sans-serif\" "
                      "text-anchor=\"middle\">%s</text>\n",
                      ml + pw / 2, h - 12.0, x_label_.c_str());
        out += buf;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"18\" y=\"%g\" font-size=\"13\" font-family=\"sans-serif\" "
                      "text-anchor=\"middle\" transform=\"rotate(-90 18 %g)\">%s</text>\n",
                      mt + ph / 2, mt + ph / 2, y_label_.c_str());
        out += buf;
        // Series.
        for (size_t si = 0; si < series_.size(); ++si) {
            const auto& s = series_[si];
            const char* color = palette[si % 8];
            std::string pts;
            for (size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
                pts += buf;
            }
            std::snprintf(buf, sizeof(buf),
                          "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" "
                          "stroke-width=\"1.8\"/>\n",
                          pts.c_str(), color);
            out += buf;
            // Legend entry.
            const double ly = mt + 14 + 18.0 * static_cast<double>(si);
            std::snprintf(buf, sizeof(buf),
                          "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" "
                          "stroke-width=\"2\"/>"
                          "<text x=\"%g\" y=\"%g\" font-size=\"12\" "
                          "font-family=\"sans-serif\">%s</text>\n",
                          w - mr + 10, ly, w - mr + 34, ly, color, w - mr + 40, ly + 4,
                          s.label.c_str());
            out += buf;
        }
        out += "</svg>\n";
        return out;
    }

    void write(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + path);
        f << str();
    }

private:
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

}  // namespace tangles
