#include <algorithm>
#include <cstdio>
#include <string>

#include "qpd/io.hpp"

namespace qpd {

namespace {

constexpr double kSize = 480.0;
constexpr double kMargin = 48.0;
constexpr double kBand = 28.0; // strip above the plot for essential points

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string svg_plot(const std::vector<PersistenceDiagram>& diagrams, const std::vector<ErrorRectangle>& rects) {
    double hi = 0.0;
    for (const auto& d : diagrams)
        for (const auto& p : d.points) {
            hi = std::max(hi, p.birth);
            if (!p.essential()) hi = std::max(hi, p.death);
        }
    for (const auto& r : rects)
        if (r.admissible) hi = std::max({hi, r.x1, r.y1});
    if (hi <= 0) hi = 1.0;
    hi *= 1.05;

    const double plot = kSize - 2 * kMargin;
    const double top = kMargin + kBand;
    const double span = plot - kBand;
    auto sx = [&](double v) { return kMargin + v / hi * plot; };
    auto sy = [&](double v) { return top + span - v / hi * span; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(kSize) + "\" height=\"" +
         fmt(kSize) + "\" viewBox=\"0 0 " + fmt(kSize) + " " + fmt(kSize) + "\">\n";
    s += "<g id=\"axes\" stroke=\"#000\" stroke-width=\"1\" fill=\"none\">\n";
    s += "<line x1=\"" + fmt(sx(0)) + "\" y1=\"" + fmt(sy(0)) + "\" x2=\"" + fmt(sx(hi)) + "\" y2=\"" + fmt(sy(0)) + "\"/>\n";
    s += "<line x1=\"" + fmt(sx(0)) + "\" y1=\"" + fmt(sy(0)) + "\" x2=\"" + fmt(sx(0)) + "\" y2=\"" + fmt(kMargin) + "\"/>\n";
    s += "<line x1=\"" + fmt(sx(0)) + "\" y1=\"" + fmt(sy(0)) + "\" x2=\"" + fmt(sx(hi)) + "\" y2=\"" + fmt(sy(hi)) +
         "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    s += "<line x1=\"" + fmt(sx(0)) + "\" y1=\"" + fmt(top) + "\" x2=\"" + fmt(sx(hi)) + "\" y2=\"" + fmt(top) +
         "\" stroke=\"#888\" stroke-dasharray=\"2 2\"/>\n";
    s += "</g>\n";
    s += "<text x=\"" + fmt(kMargin - 18) + "\" y=\"" + fmt(kMargin + kBand / 2 + 4) + "\" font-size=\"14\">&#8734;</text>\n";
    s += "<text x=\"" + fmt(kSize / 2) + "\" y=\"" + fmt(kSize - 12) + "\" font-size=\"12\" text-anchor=\"middle\">birth</text>\n";
    s += "<text x=\"14\" y=\"" + fmt(kSize / 2) + "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         fmt(kSize / 2) + ")\">death</text>\n";
    for (double tick : {0.0, hi / 2, hi / 1.05}) {
        char label[32];
        std::snprintf(label, sizeof label, "%.3g", tick);
        s += "<text x=\"" + fmt(sx(tick)) + "\" y=\"" + fmt(sy(0) + 14) + "\" font-size=\"10\" text-anchor=\"middle\">" +
             label + "</text>\n";
        s += "<text x=\"" + fmt(kMargin - 4) + "\" y=\"" + fmt(sy(tick) + 3) + "\" font-size=\"10\" text-anchor=\"end\">" +
             label + "</text>\n";
    }

    s += "<g id=\"rectangles\" fill=\"#ff7f0e\" fill-opacity=\"0.15\" stroke=\"#ff7f0e\">\n";
    for (const auto& r : rects) {
        if (!r.admissible) continue;
        s += "<rect x=\"" + fmt(sx(r.x0)) + "\" y=\"" + fmt(sy(r.y1)) + "\" width=\"" + fmt(sx(r.x1) - sx(r.x0)) +
             "\" height=\"" + fmt(sy(r.y0) - sy(r.y1)) + "\"/>\n";
    }
    s += "</g>\n";

    s += "<g id=\"points\">\n";
    for (const auto& d : diagrams) {
        const char* color = kColors[static_cast<std::size_t>(std::clamp(d.dim, 0, 4))];
        for (const auto& p : d.points) {
            double y = p.essential() ? kMargin + kBand / 2 : sy(p.death);
            s += "<circle cx=\"" + fmt(sx(p.birth)) + "\" cy=\"" + fmt(y) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
        }
    }
    s += "</g>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace qpd
