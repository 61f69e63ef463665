#include "cepstra/svg.hpp"

#include "cepstra/csv.hpp"
#include "cepstra/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace cepstra {

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string num(double v) { return format_double(v); }

void open_svg(std::ofstream& out, const std::string& path, int width, int height,
              const std::vector<std::string>& comments) {
    out.open(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    for (const std::string& c : comments) out << "<!-- " << xml_escape(c) << " -->\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
}

} // namespace

void write_bar_chart_svg(const std::string& path, const std::string& title,
                         const std::vector<BarDatum>& bars,
                         const std::vector<std::string>& comments) {
    const int label_col = 380;
    const int bar_area = 460;
    const int row_h = 22;
    const int top = 50;
    const int width = 900;
    const int height = top + static_cast<int>(bars.size()) * row_h + 30;

    double lo = 0.0, hi = 0.0;
    for (const BarDatum& b : bars) {
        lo = std::min(lo, b.value);
        hi = std::max(hi, b.value);
    }
    if (hi == lo) hi = lo + 1.0;
    const double span = hi - lo;
    const double zero_x = label_col + bar_area * (0.0 - lo) / span;

    std::ofstream out;
    open_svg(out, path, width, height, comments);
    out << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(title) << "</text>\n";
    out << "<line x1=\"" << num(zero_x) << "\" y1=\"" << top - 8 << "\" x2=\"" << num(zero_x)
        << "\" y2=\"" << height - 24 << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";

    for (std::size_t i = 0; i < bars.size(); ++i) {
        const double y = top + static_cast<double>(i) * row_h;
        const double w = std::fabs(bars[i].value) / span * bar_area;
        const double x = bars[i].value >= 0.0 ? zero_x : zero_x - w;
        out << "<text x=\"" << label_col - 8 << "\" y=\"" << num(y + 13)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">"
            << xml_escape(bars[i].label) << "</text>\n";
        out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
            << "\" height=\"16\" fill=\"#4878a8\"/>\n";
        out << "<text x=\"" << num(bars[i].value >= 0.0 ? x + w + 6.0 : x - 6.0) << "\" y=\""
            << num(y + 13) << "\" text-anchor=\""
            << (bars[i].value >= 0.0 ? "start" : "end")
            << "\" font-family=\"monospace\" font-size=\"11\">" << num(bars[i].value)
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw DataError("write failed: " + path);
}

void write_line_chart_svg(const std::string& path, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::vector<std::string>& comments) {
    if (xs.size() != ys.size()) throw ContractError("line chart: size mismatch");
    if (xs.empty()) throw ContractError("line chart: empty series");

    const int width = 900, height = 480;
    const int ml = 80, mr = 30, mt = 50, mb = 60;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    double x_lo = xs[0], x_hi = xs[0], y_lo = ys[0], y_hi = ys[0];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        x_lo = std::min(x_lo, xs[i]);
        x_hi = std::max(x_hi, xs[i]);
        y_lo = std::min(y_lo, ys[i]);
        y_hi = std::max(y_hi, ys[i]);
    }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    auto sx = [&](double v) { return ml + (v - x_lo) / (x_hi - x_lo) * plot_w; };
    auto sy = [&](double v) { return mt + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h; };

    std::ofstream out;
    open_svg(out, path, width, height, comments);
    out << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(title) << "</text>\n";
    // Axes
    out << "<line x1=\"" << ml << "\" y1=\"" << mt + plot_h << "\" x2=\"" << ml + plot_w
        << "\" y2=\"" << mt + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << mt + plot_h << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double fx = x_lo + (x_hi - x_lo) * t / 5.0;
        const double fy = y_lo + (y_hi - y_lo) * t / 5.0;
        out << "<line x1=\"" << num(sx(fx)) << "\" y1=\"" << mt + plot_h << "\" x2=\""
            << num(sx(fx)) << "\" y2=\"" << mt + plot_h + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(sx(fx)) << "\" y=\"" << mt + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
            << num(fx) << "</text>\n";
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << num(sy(fy)) << "\" x2=\"" << ml
            << "\" y2=\"" << num(sy(fy)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << num(sy(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" << num(fy)
            << "</text>\n";
    }
    out << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(x_label) << "</text>\n";
    out << "<text x=\"20\" y=\"" << mt + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 "
        << mt + plot_h / 2 << ")\">" << xml_escape(y_label) << "</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#c0504d\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out << ' ';
        out << num(sx(xs[i])) << ',' << num(sy(ys[i]));
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << "<circle cx=\"" << num(sx(xs[i])) << "\" cy=\"" << num(sy(ys[i]))
            << "\" r=\"3\" fill=\"#c0504d\"/>\n";
    out << "</svg>\n";
    if (!out) throw DataError("write failed: " + path);
}

} // namespace cepstra
