#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spiroplanck::cli {

/// Minimal SVG 1.1 writer. Coordinates are user units; numbers are written
/// with 6 significant digits so output is stable across platforms.
class SvgWriter {
public:
    SvgWriter(double width, double height);

    void rect(double x, double y, double w, double h, std::string_view stroke,
              std::string_view fill, double stroke_width = 1.0);
    void line(double x1, double y1, double x2, double y2, std::string_view stroke,
              double stroke_width = 1.0, std::string_view dash = {});
    void circle(double cx, double cy, double r, std::string_view stroke, std::string_view fill,
                double stroke_width = 1.0, double opacity = 1.0);
    /// Points are (x0, y0, x1, y1, ...).
    void polyline(std::span<const double> xy, std::string_view stroke, double stroke_width = 1.0,
                  std::string_view dash = {});
    void text(double x, double y, std::string_view content, double size = 12.0,
              std::string_view anchor = "start", double rotate = 0.0);

    std::string str() const;

private:
    double width_;
    double height_;
    std::string body_;
};

std::string xml_escape(std::string_view text);

/// Round tick positions (1, 2, 5 x 10^k spacing) covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    std::string dash;     ///< stroke-dasharray, empty for solid
    bool markers = false;
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
    double width = 720.0;
    double height = 480.0;

    /// Axes with ticks, one polyline per series and a legend box.
    std::string render() const;
};

}  // namespace spiroplanck::cli
