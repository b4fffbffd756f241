#include "spiroplanck/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spiroplanck/error.hpp"

namespace spiroplanck::curve {

namespace {

constexpr std::int64_t kMaxClosureDenominator = 32;

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw InvalidArgument(std::string("spirograph: ") + name + " must be finite");
    }
}

}  // namespace

void SpirographParams::validate() const {
    require_finite(r1, "r1");
    require_finite(r2, "r2");
    require_finite(a, "a");
    require_finite(t_step, "t_step");
    require_finite(t_max, "t_max");
    if (r2 == 0.0) {
        throw InvalidArgument("spirograph: r2 must be nonzero (it divides the frequency ratio)");
    }
    if (!(t_step > 0.0)) {
        throw InvalidArgument("spirograph: t_step must be > 0");
    }
    if (!(t_max > 0.0)) {
        throw InvalidArgument("spirograph: t_max must be > 0");
    }
}

CurvePoint spirograph_point(const SpirographParams& params, double t) {
    if (params.r2 == 0.0) {
        throw InvalidArgument("spirograph: r2 must be nonzero (it divides the frequency ratio)");
    }
    require_finite(t, "t");
    const double outer = params.r1 + params.r2;
    const double arm = params.r2 + params.a;
    const double ratio = outer / params.r2;
    return CurvePoint{
        outer * std::cos(t) - arm * std::cos(ratio * t),
        outer * std::sin(t) - arm * std::sin(ratio * t),
        t,
    };
}

std::optional<std::int64_t> closure_denominator(const SpirographParams& params) {
    if (params.r2 == 0.0) {
        throw InvalidArgument("spirograph: r2 must be nonzero (it divides the frequency ratio)");
    }
    const double ratio = (params.r1 + params.r2) / params.r2;
    if (!std::isfinite(ratio)) {
        return std::nullopt;
    }
    for (std::int64_t q = 1; q <= kMaxClosureDenominator; ++q) {
        const double scaled = ratio * static_cast<double>(q);
        if (std::abs(scaled - std::round(scaled)) <= 1e-9 * std::max(1.0, std::abs(scaled))) {
            return q;
        }
    }
    return std::nullopt;
}

double default_t_max(const SpirographParams& params) {
    const auto q = closure_denominator(params);
    return 2.0 * std::numbers::pi * static_cast<double>(q.value_or(kMaxClosureDenominator));
}

SpirographParams resolved(SpirographParams params) {
    if (params.t_max == 0.0) {
        params.t_max = default_t_max(params);
    }
    return params;
}

std::vector<CurvePoint> generate_curve(const SpirographParams& params) {
    params.validate();
    const double steps = std::floor(params.t_max / params.t_step);
    if (steps > 1e8) {
        throw InvalidArgument("spirograph: t_max / t_step exceeds 1e8 samples");
    }
    const auto count = static_cast<std::size_t>(steps) + 1;
    std::vector<CurvePoint> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        points.push_back(spirograph_point(params, static_cast<double>(i) * params.t_step));
    }
    return points;
}

std::optional<Selection> select_next(std::span<const CurvePoint> curve, std::size_t cursor) {
    if (cursor >= curve.size()) {
        return std::nullopt;
    }
    return Selection{curve[cursor], cursor + 1};
}

QuantizedKey quantize(const CurvePoint& p, double quantum) {
    if (!(quantum > 0.0)) {
        throw InvalidArgument("quantize: quantum must be > 0");
    }
    constexpr double limit = 9.0e18;
    const double gx = std::round(p.x / quantum);
    const double gy = std::round(p.y / quantum);
    if (!(std::abs(gx) < limit) || !(std::abs(gy) < limit)) {
        throw InvalidArgument("quantize: coordinate out of range for the quantum");
    }
    return QuantizedKey{static_cast<std::int64_t>(gx), static_cast<std::int64_t>(gy)};
}

Bounds bounding_box(std::span<const CurvePoint> points) {
    if (points.empty()) {
        throw InvalidArgument("bounding_box: empty point set");
    }
    Bounds b{points.front().x, points.front().y, points.front().x, points.front().y};
    for (const auto& p : points) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

}  // namespace spiroplanck::curve
