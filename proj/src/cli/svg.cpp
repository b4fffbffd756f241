#include "spiroplanck/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spiroplanck/error.hpp"
#include "spiroplanck/format.hpp"

namespace spiroplanck::cli {

namespace {

std::string num(double v) { return fmt::significant(v, 6); }

std::string stroke_attrs(std::string_view stroke, double width, std::string_view dash) {
    std::string s = " stroke=\"" + xml_escape(stroke) + "\" stroke-width=\"" + num(width) + "\"";
    if (!dash.empty()) {
        s += " stroke-dasharray=\"" + xml_escape(dash) + "\"";
    }
    return s;
}

}  // namespace

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
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
            case '\'':
                out += "&apos;";
                break;
            default:
                out += ch;
        }
    }
    return out;
}

SvgWriter::SvgWriter(double width, double height) : width_(width), height_(height) {}

void SvgWriter::rect(double x, double y, double w, double h, std::string_view stroke,
                     std::string_view fill, double stroke_width) {
    body_ += "  <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
             "\" height=\"" + num(h) + "\" fill=\"" + xml_escape(fill) + "\"" +
             stroke_attrs(stroke, stroke_width, {}) + "/>\n";
}

void SvgWriter::line(double x1, double y1, double x2, double y2, std::string_view stroke,
                     double stroke_width, std::string_view dash) {
    body_ += "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
             "\" y2=\"" + num(y2) + "\"" + stroke_attrs(stroke, stroke_width, dash) + "/>\n";
}

void SvgWriter::circle(double cx, double cy, double r, std::string_view stroke,
                       std::string_view fill, double stroke_width, double opacity) {
    body_ += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
             "\" fill=\"" + xml_escape(fill) + "\"";
    if (opacity < 1.0) {
        body_ += " fill-opacity=\"" + num(opacity) + "\"";
    }
    body_ += stroke_attrs(stroke, stroke_width, {}) + "/>\n";
}

void SvgWriter::polyline(std::span<const double> xy, std::string_view stroke, double stroke_width,
                         std::string_view dash) {
    body_ += "  <polyline fill=\"none\"" + stroke_attrs(stroke, stroke_width, dash) + " points=\"";
    for (std::size_t i = 0; i + 1 < xy.size(); i += 2) {
        if (i > 0) {
            body_ += ' ';
        }
        body_ += num(xy[i]) + "," + num(xy[i + 1]);
    }
    body_ += "\"/>\n";
}

void SvgWriter::text(double x, double y, std::string_view content, double size,
                     std::string_view anchor, double rotate) {
    body_ += "  <text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\"" +
             " font-size=\"" + num(size) + "\" text-anchor=\"" + xml_escape(anchor) + "\"";
    if (rotate != 0.0) {
        body_ += " transform=\"rotate(" + num(rotate) + " " + num(x) + " " + num(y) + ")\"";
    }
    body_ += ">" + xml_escape(content) + "</text>\n";
}

std::string SvgWriter::str() const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width_) +
           "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " +
           num(height_) + "\">\n";
    out += body_;
    out += "</svg>\n";
    return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || target < 1) {
        return {};
    }
    if (hi < lo) {
        std::swap(lo, hi);
    }
    if (hi == lo) {
        return {lo};
    }
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm <= 1.0 ? 1.0 : norm <= 2.0 ? 2.0 : norm <= 5.0 ? 5.0 : 10.0) * mag;
    std::vector<double> ticks;
    const double first = std::ceil(lo / step - 1e-9);
    for (double k = first;; k += 1.0) {
        const double t = k * step;
        if (t > hi + step * 1e-9) {
            break;
        }
        ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    }
    return ticks;
}

std::string LinePlot::render() const {
    const double left = 90.0;
    const double right = 170.0;
    const double top = 40.0;
    const double bottom = 60.0;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) {
            throw InvalidArgument("plot: series '" + s.label + "' has mismatched x/y lengths");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    ymin = std::min(ymin, 0.0);
    if (xmax == xmin) {
        xmax = xmin + 1.0;
    }
    if (ymax == ymin) {
        ymax = ymin + 1.0;
    }
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + ph - (y - ymin) / (ymax - ymin) * ph; };

    SvgWriter svg(width, height);
    svg.rect(0, 0, width, height, "none", "#ffffff", 0.0);
    svg.rect(left, top, pw, ph, "#000000", "none", 1.0);
    svg.text(left + pw / 2, top - 14, title, 16, "middle");
    svg.text(left + pw / 2, height - 16, x_label, 13, "middle");
    svg.text(22, top + ph / 2, y_label, 13, "middle", -90.0);

    for (double t : nice_ticks(xmin, xmax)) {
        svg.line(px(t), top + ph, px(t), top + ph + 5, "#000000");
        svg.text(px(t), top + ph + 19, fmt::significant(t, 4), 11, "middle");
    }
    for (double t : nice_ticks(ymin, ymax)) {
        svg.line(left - 5, py(t), left, py(t), "#000000");
        svg.line(left, py(t), left + pw, py(t), "#dddddd", 0.5);
        svg.text(left - 8, py(t) + 4, fmt::significant(t, 4), 11, "end");
    }

    double legend_y = top + 10;
    for (const auto& s : series) {
        std::vector<double> xy;
        xy.reserve(2 * s.x.size());
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xy.push_back(px(s.x[i]));
            xy.push_back(py(s.y[i]));
        }
        svg.polyline(xy, s.color, 1.8, s.dash);
        if (s.markers) {
            for (std::size_t i = 0; i < xy.size(); i += 2) {
                svg.circle(xy[i], xy[i + 1], 3.5, s.color, "#ffffff", 1.5);
            }
        }
        const double lx = left + pw + 15;
        svg.line(lx, legend_y, lx + 28, legend_y, s.color, 2.0, s.dash);
        if (s.markers) {
            svg.circle(lx + 14, legend_y, 3.5, s.color, "#ffffff", 1.5);
        }
        svg.text(lx + 34, legend_y + 4, s.label, 12);
        legend_y += 20;
    }
    return svg.str();
}

}  // namespace spiroplanck::cli
