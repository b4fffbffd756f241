#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "spiroplanck/coverage.hpp"

namespace spiroplanck::oracle {

enum class Topology {
    torus,    ///< per-axis distance wraps: d -> min(d, L - d)
    bounded,  ///< plain Euclidean distance inside the square
};

std::string_view to_string(Topology topology);
Topology parse_topology(std::string_view text);

struct TrialConfig {
    coverage::FieldSpec field = coverage::benchmark_field();
    std::int64_t n_nodes = 321;
    std::int64_t trials = 10000;
    std::uint64_t seed = 20121001;
    Topology topology = Topology::torus;
    /// Worker threads; results do not depend on this value.
    unsigned threads = 1;

    void validate() const;
};

/// Below this many trials the standard errors are reported but flagged.
inline constexpr std::int64_t kMinReliableTrials = 30;

struct TrialStats {
    std::int64_t trials = 0;
    std::int64_t n_nodes = 0;
    double p_no_isolated = 0.0;
    double p_no_isolated_stderr = 0.0;
    double mean_isolated_count = 0.0;
    double mean_isolated_count_stderr = 0.0;
    /// Empirical mass over n = 0..N nodes covering a uniform probe point.
    std::vector<double> coverage_histogram;
    std::vector<double> coverage_histogram_stderr;
    bool stderr_reliable = false;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Squared distance under the topology (torus wraps each axis on [0, L)).
double squared_distance(Point a, Point b, double side_length, Topology topology);

/// Number of nodes with no other node within distance R (inclusive).
/// Uses a uniform cell grid when the field spans at least three cells per
/// axis; the result equals the all-pairs count.
std::int64_t count_isolated(std::span<const Point> nodes, const coverage::FieldSpec& field,
                            Topology topology);

/// All-pairs reference for count_isolated.
std::int64_t count_isolated_bruteforce(std::span<const Point> nodes,
                                       const coverage::FieldSpec& field, Topology topology);

/// Node positions drawn for trial `index` (first N draws of its sub-stream).
std::vector<Point> deploy(const TrialConfig& config, std::uint64_t index);

/// Per trial: N uniform nodes, an isolation count, and one probe point whose
/// covering-node count feeds the histogram. Trial i draws from a stream seeded
/// with seed ^ (i * 0x9E3779B97F4A7C15).
TrialStats simulate(const TrialConfig& config);

struct ComparisonReport {
    double density = 0.0;
    std::int64_t n_nodes = 0;
    double formula_p = 0.0;        ///< (1 - e^{-lambda})^N
    double empirical_p = 0.0;
    double p_gap = 0.0;            ///< |empirical - formula|
    double p_stderr = 0.0;
    double p_gap_in_stderr = 0.0;  ///< infinity when stderr is zero and gap is not
    double predicted_isolated = 0.0;  ///< N e^{-lambda}
    double empirical_isolated = 0.0;
    double isolated_stderr = 0.0;
    double tv_binomial = 0.0;
    double tv_poisson = 0.0;
    bool degenerate = false;  ///< N == 1: the asymptotic formula does not apply
    bool stderr_reliable = false;
};

/// Formula-vs-simulation gaps. The binomial side is coverage_binomial(field, N)
/// and the Poisson side uses lambda as its mean.
ComparisonReport compare_to_formula(const TrialStats& stats, const coverage::FieldSpec& field,
                                    double density, std::int64_t n_nodes);

}  // namespace spiroplanck::oracle
