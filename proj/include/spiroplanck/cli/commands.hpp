#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spiroplanck/cli/settings.hpp"
#include "spiroplanck/coverage.hpp"
#include "spiroplanck/curve.hpp"
#include "spiroplanck/oracle.hpp"
#include "spiroplanck/planner.hpp"
#include "spiroplanck/radiometry.hpp"

namespace spiroplanck::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitNotConverged = 3;

struct RunOptions {
    std::filesystem::path out_dir = ".";
    /// Non-converged planner runs exit with kExitNotConverged.
    bool strict = false;
};

struct CommandResult {
    int exit_code = kExitOk;
    std::vector<std::filesystem::path> artifacts;  ///< including the manifest, last
    std::vector<std::string> warnings;
    std::vector<std::string> summary;  ///< human-readable lines for stdout
    RunManifest manifest;
};

// Typed views over resolved settings. Errors name the offending key.
coverage::FieldSpec field_from(const Settings& settings);
curve::SpirographParams curve_from(const Settings& settings);
planner::PlannerConfig planner_from(const Settings& settings);
oracle::TrialConfig trial_from(const Settings& settings);
radiometry::PhysicalConstants constants_named(std::string_view name);

/// Affine map of a curve bounding box onto an L x L field: uniform scale so
/// the larger extent spans 90% of the side, centred (5% margin each side).
struct FieldMapping {
    double scale = 1.0;
    double curve_cx = 0.0;
    double curve_cy = 0.0;
    double side = 1.0;

    double x(double curve_x) const { return side / 2 + (curve_x - curve_cx) * scale; }
    double y(double curve_y) const { return side / 2 + (curve_y - curve_cy) * scale; }
};

FieldMapping map_curve_to_field(const curve::Bounds& bounds, double side_length);

// Renderers (no I/O).
std::string spirograph_csv(std::span<const curve::CurvePoint> points);
std::string spirograph_svg(std::span<const curve::CurvePoint> points);
std::string placement_csv(const planner::PlanResult& result, const FieldMapping& mapping);
std::string trace_csv(const planner::PlanResult& result);
std::string placement_svg(const planner::PlanResult& result, std::span<const curve::CurvePoint> curve,
                          const FieldMapping& mapping, const coverage::FieldSpec& field);

CommandResult cmd_spirograph(Settings settings, const RunOptions& options);
CommandResult cmd_plan(Settings settings, const RunOptions& options);
CommandResult cmd_planck(Settings settings, const RunOptions& options);
CommandResult cmd_coverage(Settings settings, const RunOptions& options);
CommandResult cmd_montecarlo(Settings settings, const RunOptions& options);
CommandResult cmd_bench(Settings settings, const RunOptions& options);

CommandResult execute(Command command, Settings settings, const RunOptions& options);

/// Re-runs the command recorded in a manifest. Outputs go to `out_dir` when
/// given, otherwise to the manifest's output_dir.
CommandResult replay(const std::filesystem::path& manifest_path,
                     const std::optional<std::filesystem::path>& out_dir, bool strict = false);

}  // namespace spiroplanck::cli
