#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spiroplanck/coverage.hpp"
#include "spiroplanck/curve.hpp"
#include "spiroplanck/radiometry.hpp"

namespace spiroplanck::planner {

enum class SelectPolicy {
    sequential,  ///< ascending t with a cursor; exhausts at the end of the curve
    random,      ///< seeded uniform draw with replacement; never exhausts
};

std::string_view to_string(SelectPolicy policy);
SelectPolicy parse_policy(std::string_view text);

struct PlannerConfig {
    coverage::FieldSpec field = coverage::benchmark_field();
    curve::SpirographParams curve_params{};
    double threshold = 0.1;
    double quantum = curve::kDefaultQuantum;
    double temperature = 6000.0;
    /// Wavelength (m) fed to the radiance diagnostic per unit density.
    double wavelength_scale = 1e-6;
    radiometry::PhysicalConstants constants = radiometry::kProseConstants;
    /// 0 means 10 x curve length.
    std::int64_t max_iterations = 0;
    SelectPolicy select = SelectPolicy::sequential;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class Outcome { converged, curve_exhausted, iteration_capped };

std::string_view to_string(Outcome outcome);

struct IterationRecord {
    std::int64_t iteration = 0;
    std::int64_t n_nodes = 0;
    double density = 0.0;
    double p = 0.0;
    double radiance = 0.0;
    bool accepted = false;
};

struct PlanResult {
    std::vector<curve::CurvePoint> placed;
    std::int64_t n_final = 1;
    double density_final = 0.0;
    double p_final = 0.0;
    std::vector<IterationRecord> trace;
    Outcome outcome = Outcome::converged;
};

/// Sequential placement: starting from one node, keep selecting curve points
/// and occupying the new ones until (1 - e^{-lambda})^N reaches the threshold.
/// Every loop pass records the radiance at wavelength lambda * scale, whether
/// or not the selected point was new.
PlanResult run(const PlannerConfig& config, std::span<const curve::CurvePoint> curve);

/// Generates the curve from config.curve_params (t_max == 0 resolves to one
/// closure) and runs on it.
PlanResult run(const PlannerConfig& config);

/// Header plus one row per trace record; columns
/// iteration,N,lambda,p,P_lambda,accepted.
struct TraceTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

TraceTable trace_to_rows(const PlanResult& result);

}  // namespace spiroplanck::planner
