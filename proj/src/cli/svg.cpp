#include "accelrad/cli.hpp"

#include "accelrad/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace accelrad::cli {

namespace {

constexpr const char* kPalette[] = {"#1f4e99", "#c0392b", "#27864a", "#8e44ad", "#d68910", "#2c3e50"};
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 60.0;

std::string fixed(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

// Data-to-pixel map for one axis; log axes work in log10 space.
struct Axis {
    bool log = false;
    double lo = 0.0;
    double hi = 1.0;
    double pixel_lo = 0.0;
    double pixel_hi = 1.0;

    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
    double transform(double v) const { return log ? std::log10(v) : v; }
    double to_pixel(double v) const
    {
        return pixel_lo + (transform(v) - lo) / (hi - lo) * (pixel_hi - pixel_lo);
    }
};

// Sets lo/hi in transformed space from the data, padded so a flat series is visible.
void fit_range(Axis& axis, const std::vector<double>& values)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values) {
        if (!axis.usable(v))
            continue;
        lo = std::min(lo, axis.transform(v));
        hi = std::max(hi, axis.transform(v));
    }
    if (!(lo <= hi)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
        lo -= 0.5;
        hi += 0.5;
    }
    axis.lo = lo;
    axis.hi = hi;
}

// About five ticks at 1, 2 or 5 times a power of ten (linear) or at decades (log).
std::vector<double> ticks(const Axis& axis)
{
    std::vector<double> out;
    if (axis.log) {
        const double step = std::max(1.0, std::ceil((axis.hi - axis.lo) / 8.0));
        for (double e = std::ceil(axis.lo / step) * step; e <= axis.hi + 1e-9; e += step)
            out.push_back(std::pow(10.0, e));
        return out;
    }
    const double raw = (axis.hi - axis.lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double unit = raw / mag < 1.5 ? 1.0 : raw / mag < 3.5 ? 2.0 : raw / mag < 7.5 ? 5.0 : 10.0;
    const double step = unit * mag;
    for (double v = std::ceil(axis.lo / step) * step; v <= axis.hi + 1e-9 * step; v += step)
        out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return out;
}

} // namespace

std::string render_svg(const CsvTable& table, const PlotOptions& options)
{
    if (table.header.empty())
        throw PreconditionError("plot: the table has no columns");
    const std::size_t xi = options.x_column.empty() ? 0 : table.column(options.x_column);
    std::vector<std::size_t> yi;
    if (options.columns.empty()) {
        for (std::size_t i = 0; i < table.header.size(); ++i)
            if (i != xi)
                yi.push_back(i);
    } else {
        for (const auto& name : options.columns)
            yi.push_back(table.column(name));
    }

    const double W = options.width;
    const double H = options.height;
    Axis x{options.log_x, 0, 1, kMarginLeft, W - kMarginRight};
    Axis y{options.log_y, 0, 1, H - kMarginBottom, kMarginTop};

    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : table.rows) {
        if (!x.usable(row[xi]))
            continue;
        xs.push_back(row[xi]);
        for (std::size_t c : yi)
            ys.push_back(row[c]);
    }
    fit_range(x, xs);
    fit_range(y, ys);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width
        << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << ' '
        << options.height << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"white\"/>\n";
    if (!options.title.empty())
        svg << "<text x=\"" << fixed(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"16\">"
            << escape(options.title) << "</text>\n";

    // Frame and ticks.
    svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
        << "<rect x=\"" << fixed(kMarginLeft) << "\" y=\"" << fixed(kMarginTop) << "\" width=\""
        << fixed(W - kMarginLeft - kMarginRight) << "\" height=\""
        << fixed(H - kMarginTop - kMarginBottom) << "\"/>\n";
    const auto xt = ticks(x);
    const auto yt = ticks(y);
    for (double t : xt) {
        const double px = x.to_pixel(t);
        svg << "<line x1=\"" << fixed(px) << "\" y1=\"" << fixed(H - kMarginBottom) << "\" x2=\""
            << fixed(px) << "\" y2=\"" << fixed(H - kMarginBottom + 5) << "\"/>\n";
    }
    for (double t : yt) {
        const double py = y.to_pixel(t);
        svg << "<line x1=\"" << fixed(kMarginLeft - 5) << "\" y1=\"" << fixed(py) << "\" x2=\""
            << fixed(kMarginLeft) << "\" y2=\"" << fixed(py) << "\"/>\n";
    }
    svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (double t : xt)
        svg << "<text x=\"" << fixed(x.to_pixel(t)) << "\" y=\"" << fixed(H - kMarginBottom + 18)
            << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    for (double t : yt)
        svg << "<text x=\"" << fixed(kMarginLeft - 8) << "\" y=\"" << fixed(y.to_pixel(t) + 4)
            << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    std::string y_label;
    for (std::size_t k = 0; k < yi.size(); ++k)
        y_label += (k ? ", " : "") + table.header[yi[k]];
    svg << "<text x=\"" << fixed(kMarginLeft + (W - kMarginLeft - kMarginRight) / 2) << "\" y=\""
        << fixed(H - 15) << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(table.header[xi])
        << "</text>\n"
        << "<text x=\"18\" y=\"" << fixed(kMarginTop + (H - kMarginTop - kMarginBottom) / 2)
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << fixed(kMarginTop + (H - kMarginTop - kMarginBottom) / 2) << ")\">" << escape(y_label)
        << "</text>\n</g>\n";

    // One polyline per contiguous run of usable points; later columns drawn thicker.
    for (std::size_t k = 0; k < yi.size(); ++k) {
        const char* colour = kPalette[k % std::size(kPalette)];
        const std::string width = fixed(1.0 + 1.5 * static_cast<double>(k));
        svg << "<g fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << width
            << "\" stroke-linejoin=\"round\">\n";
        std::string points;
        auto flush = [&] {
            if (!points.empty())
                svg << "<polyline points=\"" << points << "\"/>\n";
            points.clear();
        };
        for (const auto& row : table.rows) {
            const double xv = row[xi];
            const double yv = row[yi[k]];
            if (!x.usable(xv) || !y.usable(yv)) {
                flush();
                continue;
            }
            points += (points.empty() ? "" : " ") + fixed(x.to_pixel(xv)) + "," + fixed(y.to_pixel(yv));
        }
        flush();
        svg << "</g>\n";
        const double ly = kMarginTop + 16.0 + 16.0 * static_cast<double>(k);
        const double lx = W - kMarginRight - 150.0;
        svg << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 24)
            << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"" << width
            << "\"/>\n<text x=\"" << fixed(lx + 30) << "\" y=\"" << fixed(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(table.header[yi[k]])
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace accelrad::cli
