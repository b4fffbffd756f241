#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace spiroplanck::curve {

/// Geometry and sampling of the pen curve
///   x = (r1 + r2) cos t - (r2 + a) cos(((r1 + r2) / r2) t)
///   y = (r1 + r2) sin t - (r2 + a) sin(((r1 + r2) / r2) t)
/// All lengths are in dimensionless model units.
struct SpirographParams {
    double r1 = 180.0;  ///< fixed circle radius
    double r2 = 40.0;   ///< rolling circle radius, must be nonzero
    double a = 15.0;    ///< pen offset
    double t_step = 0.01;
    double t_max = 0.0;  ///< 0 means "one full closure", see default_t_max()

    /// Throws InvalidArgument when r2 == 0, a length is non-finite, or the
    /// sampling controls are not strictly positive.
    void validate() const;
};

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;

    bool operator==(const CurvePoint&) const = default;
};

struct QuantizedKey {
    std::int64_t qx = 0;
    std::int64_t qy = 0;

    bool operator==(const QuantizedKey&) const = default;
};

struct QuantizedKeyHash {
    std::size_t operator()(const QuantizedKey& k) const noexcept {
        auto h = static_cast<std::uint64_t>(k.qx) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::uint64_t>(k.qy) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

inline constexpr double kDefaultQuantum = 1e-6;
inline constexpr double kDefaultStep = 0.01;

/// Evaluates the curve at parameter t. Rejects r2 == 0 and non-finite t.
CurvePoint spirograph_point(const SpirographParams& params, double t);

/// Reduced denominator q of (r1 + r2) / r2, searched up to 32. Returns
/// std::nullopt when the ratio is not a rational with such a small denominator.
std::optional<std::int64_t> closure_denominator(const SpirographParams& params);

/// One full closure 2*pi*q, or 64*pi when no small q exists.
double default_t_max(const SpirographParams& params);

/// Copy of params with t_max == 0 replaced by default_t_max().
SpirographParams resolved(SpirographParams params);

/// Samples t = 0, t_step, ..., k*t_step <= t_max in ascending order.
/// Length is floor(t_max / t_step) + 1.
std::vector<CurvePoint> generate_curve(const SpirographParams& params);

/// Result of a successful SELECT step.
struct Selection {
    CurvePoint point;
    std::size_t next_cursor = 0;
};

/// Sequential SELECT: the point at `cursor` and cursor + 1, or std::nullopt
/// once the cursor has reached the end of the sequence.
std::optional<Selection> select_next(std::span<const CurvePoint> curve, std::size_t cursor);

/// (round(x / quantum), round(y / quantum)). Rejects quantum <= 0 and
/// coordinates whose grid index does not fit in 64 bits.
QuantizedKey quantize(const CurvePoint& p, double quantum = kDefaultQuantum);

/// Axis-aligned bounding box of a point set.
struct Bounds {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
};

/// Rejects an empty sequence.
Bounds bounding_box(std::span<const CurvePoint> points);

}  // namespace spiroplanck::curve
