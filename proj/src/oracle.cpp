#include "spiroplanck/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "spiroplanck/error.hpp"
#include "spiroplanck/rng.hpp"

namespace spiroplanck::oracle {

std::string_view to_string(Topology topology) {
    return topology == Topology::torus ? "torus" : "bounded";
}

Topology parse_topology(std::string_view text) {
    if (text == "torus") {
        return Topology::torus;
    }
    if (text == "bounded") {
        return Topology::bounded;
    }
    throw InvalidArgument("montecarlo: unknown topology '" + std::string(text) +
                          "' (expected torus or bounded)");
}

void TrialConfig::validate() const {
    if (n_nodes < 1) {
        throw InvalidArgument("montecarlo: n_nodes must be >= 1");
    }
    if (trials < 1) {
        throw InvalidArgument("montecarlo: trials must be >= 1");
    }
    if (threads < 1) {
        throw InvalidArgument("montecarlo: threads must be >= 1");
    }
}

double squared_distance(Point a, Point b, double side_length, Topology topology) {
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    if (topology == Topology::torus) {
        dx = std::min(dx, side_length - dx);
        dy = std::min(dy, side_length - dy);
    }
    return dx * dx + dy * dy;
}

std::int64_t count_isolated_bruteforce(std::span<const Point> nodes,
                                       const coverage::FieldSpec& field, Topology topology) {
    const double r2 = field.range() * field.range();
    std::vector<char> has_neighbor(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (squared_distance(nodes[i], nodes[j], field.side_length(), topology) <= r2) {
                has_neighbor[i] = 1;
                has_neighbor[j] = 1;
            }
        }
    }
    return std::count(has_neighbor.begin(), has_neighbor.end(), 0);
}

std::int64_t count_isolated(std::span<const Point> nodes, const coverage::FieldSpec& field,
                            Topology topology) {
    const double side = field.side_length();
    const auto cells = static_cast<std::int64_t>(std::floor(side / field.range()));
    if (cells < 3 || cells > 4096) {
        return count_isolated_bruteforce(nodes, field, topology);
    }
    const double cell = side / static_cast<double>(cells);
    auto cell_of = [&](double v) {
        return std::clamp(static_cast<std::int64_t>(v / cell), std::int64_t{0}, cells - 1);
    };

    // Counting sort of node indices by cell.
    const auto cell_count = static_cast<std::size_t>(cells * cells);
    std::vector<std::uint32_t> start(cell_count + 1, 0);
    std::vector<std::size_t> cell_index(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        cell_index[i] = static_cast<std::size_t>(cell_of(nodes[i].y) * cells + cell_of(nodes[i].x));
        ++start[cell_index[i] + 1];
    }
    for (std::size_t c = 0; c < cell_count; ++c) {
        start[c + 1] += start[c];
    }
    std::vector<std::uint32_t> order(nodes.size());
    {
        std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            order[fill[cell_index[i]]++] = static_cast<std::uint32_t>(i);
        }
    }

    const double r2 = field.range() * field.range();
    std::int64_t isolated = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::int64_t cx = cell_of(nodes[i].x);
        const std::int64_t cy = cell_of(nodes[i].y);
        bool found = false;
        for (std::int64_t dy = -1; dy <= 1 && !found; ++dy) {
            std::int64_t ny = cy + dy;
            if (topology == Topology::torus) {
                ny = (ny + cells) % cells;
            } else if (ny < 0 || ny >= cells) {
                continue;
            }
            for (std::int64_t dx = -1; dx <= 1 && !found; ++dx) {
                std::int64_t nx = cx + dx;
                if (topology == Topology::torus) {
                    nx = (nx + cells) % cells;
                } else if (nx < 0 || nx >= cells) {
                    continue;
                }
                const auto c = static_cast<std::size_t>(ny * cells + nx);
                for (std::uint32_t k = start[c]; k < start[c + 1]; ++k) {
                    const std::uint32_t j = order[k];
                    if (j != i && squared_distance(nodes[i], nodes[j], side, topology) <= r2) {
                        found = true;
                        break;
                    }
                }
            }
        }
        if (!found) {
            ++isolated;
        }
    }
    return isolated;
}

namespace {

struct TrialOutcome {
    std::int64_t isolated = 0;
    std::int64_t covering = 0;
};

std::vector<Point> draw_nodes(rng::Stream& stream, std::int64_t n, double side) {
    std::vector<Point> nodes(static_cast<std::size_t>(n));
    for (auto& p : nodes) {
        p.x = stream.uniform(0.0, side);
        p.y = stream.uniform(0.0, side);
    }
    return nodes;
}

TrialOutcome run_trial(const TrialConfig& config, std::uint64_t index) {
    rng::Stream stream(rng::sub_seed(config.seed, index));
    const double side = config.field.side_length();
    const auto nodes = draw_nodes(stream, config.n_nodes, side);
    const Point probe{stream.uniform(0.0, side), stream.uniform(0.0, side)};

    TrialOutcome out;
    out.isolated = count_isolated(nodes, config.field, config.topology);
    const double r2 = config.field.range() * config.field.range();
    for (const auto& p : nodes) {
        if (squared_distance(p, probe, side, config.topology) <= r2) {
            ++out.covering;
        }
    }
    return out;
}

}  // namespace

std::vector<Point> deploy(const TrialConfig& config, std::uint64_t index) {
    rng::Stream stream(rng::sub_seed(config.seed, index));
    return draw_nodes(stream, config.n_nodes, config.field.side_length());
}

TrialStats simulate(const TrialConfig& config) {
    config.validate();
    const auto trials = static_cast<std::size_t>(config.trials);
    std::vector<TrialOutcome> outcomes(trials);

    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(config.threads, trials));
    if (workers <= 1) {
        for (std::size_t i = 0; i < trials; ++i) {
            outcomes[i] = run_trial(config, i);
        }
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < trials; i += workers) {
                    outcomes[i] = run_trial(config, i);
                }
            });
        }
    }

    // Aggregation runs in trial order so the sums do not depend on threading.
    TrialStats stats;
    stats.trials = config.trials;
    stats.n_nodes = config.n_nodes;
    stats.coverage_histogram.assign(static_cast<std::size_t>(config.n_nodes) + 1, 0.0);
    std::int64_t no_isolated = 0;
    double sum_isolated = 0.0;
    double sum_isolated_sq = 0.0;
    std::vector<std::int64_t> counts(stats.coverage_histogram.size(), 0);
    for (const auto& o : outcomes) {
        if (o.isolated == 0) {
            ++no_isolated;
        }
        const auto iso = static_cast<double>(o.isolated);
        sum_isolated += iso;
        sum_isolated_sq += iso * iso;
        ++counts[static_cast<std::size_t>(o.covering)];
    }

    const auto t = static_cast<double>(config.trials);
    stats.p_no_isolated = static_cast<double>(no_isolated) / t;
    stats.p_no_isolated_stderr = std::sqrt(stats.p_no_isolated * (1.0 - stats.p_no_isolated) / t);
    stats.mean_isolated_count = sum_isolated / t;
    if (config.trials > 1) {
        const double var =
            std::max(0.0, (sum_isolated_sq - t * stats.mean_isolated_count * stats.mean_isolated_count) /
                              (t - 1.0));
        stats.mean_isolated_count_stderr = std::sqrt(var / t);
    }
    stats.coverage_histogram_stderr.resize(counts.size());
    for (std::size_t n = 0; n < counts.size(); ++n) {
        const double q = static_cast<double>(counts[n]) / t;
        stats.coverage_histogram[n] = q;
        stats.coverage_histogram_stderr[n] = std::sqrt(q * (1.0 - q) / t);
    }
    stats.stderr_reliable = config.trials >= kMinReliableTrials;
    return stats;
}

ComparisonReport compare_to_formula(const TrialStats& stats, const coverage::FieldSpec& field,
                                    double density, std::int64_t n_nodes) {
    ComparisonReport r;
    r.density = density;
    r.n_nodes = n_nodes;
    r.formula_p = coverage::isolation_probability(density, n_nodes);
    r.empirical_p = stats.p_no_isolated;
    r.p_gap = std::abs(r.empirical_p - r.formula_p);
    r.p_stderr = stats.p_no_isolated_stderr;
    if (r.p_stderr > 0.0) {
        r.p_gap_in_stderr = r.p_gap / r.p_stderr;
    } else {
        r.p_gap_in_stderr = r.p_gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    r.predicted_isolated = static_cast<double>(n_nodes) * std::exp(-density);
    r.empirical_isolated = stats.mean_isolated_count;
    r.isolated_stderr = stats.mean_isolated_count_stderr;
    r.tv_binomial = coverage::total_variation(stats.coverage_histogram,
                                              coverage::coverage_binomial(field, n_nodes).mass);
    r.tv_poisson = coverage::total_variation(stats.coverage_histogram,
                                             coverage::coverage_poisson(density).mass);
    r.degenerate = n_nodes == 1;
    r.stderr_reliable = stats.stderr_reliable;
    return r;
}

}  // namespace spiroplanck::oracle
