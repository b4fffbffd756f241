#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spiroplanck::coverage {

/// Square deployment field of side L (meters) with node range R (meters).
class FieldSpec {
public:
    /// Throws InvalidArgument unless 0 < range < side_length (both finite).
    FieldSpec(double side_length, double range);

    double side_length() const { return side_length_; }
    double range() const { return range_; }
    double area() const { return side_length_ * side_length_; }

    /// pi R^2 / A: the density contributed by a single node.
    double per_node_density() const;

    bool operator==(const FieldSpec&) const = default;

private:
    double side_length_;
    double range_;
};

/// Benchmark field: 100 m x 100 m with 7 m sensing range.
FieldSpec benchmark_field();

struct DensityState {
    std::int64_t n_nodes = 0;
    double density = 0.0;
    double p_isolated = 0.0;
};

/// Expected neighbours per node, N pi R^2 / A.
double density(const FieldSpec& field, std::int64_t n_nodes);

/// (1 - e^{-lambda})^N, as used by the planner's termination test.
///
/// The classic random-geometric-graph result reads this expression as the
/// probability that *no* node is isolated; the name follows the planner's
/// variable. Rejects N < 1 and lambda < 0.
double isolation_probability(double density, std::int64_t n_nodes);

/// density() and isolation_probability() for N nodes on the field.
DensityState density_state(const FieldSpec& field, std::int64_t n_nodes);

/// pi R^2 / L^2. Throws RangeError when that exceeds 1.
double p_r(const FieldSpec& field);

enum class DistributionKind { binomial, poisson };

/// Probability mass over the number of covering nodes n = 0, 1, ..., n_max.
struct CoverageDistribution {
    DistributionKind kind = DistributionKind::binomial;
    std::vector<double> mass;
    /// Mass beyond the last stored entry (zero for the binomial kind).
    double tail = 0.0;

    double total() const;
};

/// P(n) = C(N-1, n) P_R^n (1 - P_R)^(N-1-n) for n = 0..N-1, evaluated in log space.
CoverageDistribution coverage_binomial(const FieldSpec& field, std::int64_t n_nodes);

/// Binomial pmf with the given trial count and success probability.
CoverageDistribution binomial_pmf(std::int64_t trials, double p);

/// e^{-lambda} lambda^n / n! for n = 0..n_max via mass[n] = mass[n-1] lambda / n.
CoverageDistribution coverage_poisson(double lambda, std::int64_t n_max);

/// Truncates at the smallest n whose cumulative mass exceeds 1 - 1e-9,
/// capped at ceil(lambda + 12 sqrt(lambda) + 20).
CoverageDistribution coverage_poisson(double lambda);

/// Smallest n_max selected by the truncation rule above.
std::int64_t poisson_truncation(double lambda);

/// Half the L1 distance between two mass vectors over the union of supports.
double total_variation(std::span<const double> a, std::span<const double> b);

/// Le Cam's bound trials * p^2 on TV(Binomial(trials, p), Poisson(trials p)).
double le_cam_bound(std::int64_t trials, double p);

}  // namespace spiroplanck::coverage
