#include "spiroplanck/planner.hpp"

#include <cmath>
#include <unordered_set>

#include "spiroplanck/error.hpp"
#include "spiroplanck/format.hpp"
#include "spiroplanck/rng.hpp"

namespace spiroplanck::planner {

std::string_view to_string(SelectPolicy policy) {
    return policy == SelectPolicy::sequential ? "sequential" : "random";
}

SelectPolicy parse_policy(std::string_view text) {
    if (text == "sequential") {
        return SelectPolicy::sequential;
    }
    if (text == "random") {
        return SelectPolicy::random;
    }
    throw InvalidArgument("planner: unknown select policy '" + std::string(text) +
                          "' (expected sequential or random)");
}

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::converged:
            return "converged";
        case Outcome::curve_exhausted:
            return "curve-exhausted";
        case Outcome::iteration_capped:
            return "iteration-capped";
    }
    return "converged";
}

void PlannerConfig::validate() const {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw InvalidArgument("planner: threshold must lie strictly between 0 and 1");
    }
    if (!(quantum > 0.0)) {
        throw InvalidArgument("planner: quantum must be > 0");
    }
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw InvalidArgument("planner: temperature must be finite and > 0");
    }
    if (!(wavelength_scale > 0.0) || !std::isfinite(wavelength_scale)) {
        throw InvalidArgument("planner: wavelength_scale must be finite and > 0");
    }
    if (max_iterations < 0) {
        throw InvalidArgument("planner: max_iterations must be >= 1 (or 0 for the default)");
    }
    constants.validate();
}

PlanResult run(const PlannerConfig& config, std::span<const curve::CurvePoint> points) {
    config.validate();
    if (points.empty()) {
        throw InvalidArgument("planner: curve has no points");
    }
    const std::int64_t max_iterations = config.max_iterations > 0
                                            ? config.max_iterations
                                            : 10 * static_cast<std::int64_t>(points.size());

    PlanResult result;
    std::unordered_set<curve::QuantizedKey, curve::QuantizedKeyHash> closed;
    rng::Stream stream(config.seed);
    std::size_t cursor = 0;

    std::int64_t n = 1;
    double lambda = coverage::density(config.field, n);
    double p = coverage::isolation_probability(lambda, n);

    std::int64_t iteration = 0;
    Outcome outcome = Outcome::converged;
    while (p < config.threshold) {
        if (iteration >= max_iterations) {
            outcome = Outcome::iteration_capped;
            break;
        }
        curve::CurvePoint current;
        if (config.select == SelectPolicy::sequential) {
            const auto selection = curve::select_next(points, cursor);
            if (!selection) {
                outcome = Outcome::curve_exhausted;
                break;
            }
            current = selection->point;
            cursor = selection->next_cursor;
        } else {
            current = points[stream.index(points.size())];
        }

        const bool accepted = closed.insert(curve::quantize(current, config.quantum)).second;
        if (accepted) {
            result.placed.push_back(current);
            ++n;
            lambda = coverage::density(config.field, n);
            p = coverage::isolation_probability(lambda, n);
        }
        const double radiance = radiometry::spectral_radiance(
            lambda * config.wavelength_scale, config.temperature, config.constants);
        result.trace.push_back({iteration, n, lambda, p, radiance, accepted});
        ++iteration;
    }

    result.n_final = n;
    result.density_final = lambda;
    result.p_final = p;
    result.outcome = outcome;
    return result;
}

PlanResult run(const PlannerConfig& config) {
    config.validate();
    const auto params = curve::resolved(config.curve_params);
    const auto points = curve::generate_curve(params);
    return run(config, points);
}

TraceTable trace_to_rows(const PlanResult& result) {
    TraceTable table;
    table.header = {"iteration", "N", "lambda", "p", "P_lambda", "accepted"};
    table.rows.reserve(result.trace.size());
    for (const auto& rec : result.trace) {
        table.rows.push_back({fmt::integer(rec.iteration), fmt::integer(rec.n_nodes),
                              fmt::shortest(rec.density), fmt::shortest(rec.p),
                              fmt::shortest(rec.radiance), rec.accepted ? "1" : "0"});
    }
    return table;
}

}  // namespace spiroplanck::planner
