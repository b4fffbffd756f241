#include "spiroplanck/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "spiroplanck/error.hpp"

namespace spiroplanck::coverage {

FieldSpec::FieldSpec(double side_length, double range)
    : side_length_(side_length), range_(range) {
    if (!std::isfinite(side_length) || !(side_length > 0.0)) {
        throw InvalidArgument("field: side_length must be a finite value > 0");
    }
    if (!std::isfinite(range) || !(range > 0.0)) {
        throw InvalidArgument("field: range must be a finite value > 0");
    }
    if (!(range < side_length)) {
        throw InvalidArgument("field: range must be smaller than side_length");
    }
}

double FieldSpec::per_node_density() const {
    return std::numbers::pi * range_ * range_ / area();
}

FieldSpec benchmark_field() { return FieldSpec(100.0, 7.0); }

double density(const FieldSpec& field, std::int64_t n_nodes) {
    if (n_nodes < 0) {
        throw InvalidArgument("density: node count must be >= 0");
    }
    return static_cast<double>(n_nodes) * std::numbers::pi * field.range() * field.range() /
           field.area();
}

double isolation_probability(double density, std::int64_t n_nodes) {
    if (n_nodes < 1) {
        throw InvalidArgument("isolation_probability: node count must be >= 1");
    }
    if (!(density >= 0.0)) {
        throw InvalidArgument("isolation_probability: density must be >= 0");
    }
    // 1 - e^{-x} via expm1 keeps precision for small densities.
    const double base = -std::expm1(-density);
    return std::pow(base, static_cast<double>(n_nodes));
}

DensityState density_state(const FieldSpec& field, std::int64_t n_nodes) {
    const double lambda = density(field, n_nodes);
    return DensityState{n_nodes, lambda, isolation_probability(lambda, n_nodes)};
}

double p_r(const FieldSpec& field) {
    const double value = std::numbers::pi * field.range() * field.range() /
                         (field.side_length() * field.side_length());
    // Tolerate rounding at the R = L / sqrt(pi) boundary.
    if (value > 1.0 + 1e-12) {
        throw RangeError("p_r: pi R^2 / L^2 = " + std::to_string(value) +
                         " exceeds 1; range too large for the field");
    }
    return std::min(value, 1.0);
}

double CoverageDistribution::total() const {
    return std::accumulate(mass.begin(), mass.end(), 0.0);
}

CoverageDistribution binomial_pmf(std::int64_t trials, double p) {
    if (trials < 0) {
        throw InvalidArgument("binomial: trial count must be >= 0");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument("binomial: probability must lie in [0, 1]");
    }
    CoverageDistribution dist;
    dist.kind = DistributionKind::binomial;
    dist.mass.assign(static_cast<std::size_t>(trials) + 1, 0.0);
    if (p == 0.0) {
        dist.mass.front() = 1.0;
        return dist;
    }
    if (p == 1.0) {
        dist.mass.back() = 1.0;
        return dist;
    }
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    const double n = static_cast<double>(trials);
    const double log_n_fact = std::lgamma(n + 1.0);
    for (std::int64_t k = 0; k <= trials; ++k) {
        const double kd = static_cast<double>(k);
        const double log_choose = log_n_fact - std::lgamma(kd + 1.0) - std::lgamma(n - kd + 1.0);
        dist.mass[static_cast<std::size_t>(k)] =
            std::exp(log_choose + kd * log_p + (n - kd) * log_q);
    }
    return dist;
}

CoverageDistribution coverage_binomial(const FieldSpec& field, std::int64_t n_nodes) {
    if (n_nodes < 1) {
        throw InvalidArgument("coverage_binomial: node count must be >= 1");
    }
    return binomial_pmf(n_nodes - 1, p_r(field));
}

CoverageDistribution coverage_poisson(double lambda, std::int64_t n_max) {
    if (!std::isfinite(lambda) || !(lambda >= 0.0)) {
        throw InvalidArgument("coverage_poisson: lambda must be finite and >= 0");
    }
    if (n_max < 0) {
        throw InvalidArgument("coverage_poisson: n_max must be >= 0");
    }
    CoverageDistribution dist;
    dist.kind = DistributionKind::poisson;
    dist.mass.resize(static_cast<std::size_t>(n_max) + 1);
    dist.mass[0] = std::exp(-lambda);
    for (std::size_t n = 1; n < dist.mass.size(); ++n) {
        dist.mass[n] = dist.mass[n - 1] * lambda / static_cast<double>(n);
    }
    dist.tail = std::max(0.0, 1.0 - dist.total());
    return dist;
}

std::int64_t poisson_truncation(double lambda) {
    if (!std::isfinite(lambda) || !(lambda >= 0.0)) {
        throw InvalidArgument("coverage_poisson: lambda must be finite and >= 0");
    }
    const auto cap = static_cast<std::int64_t>(std::ceil(lambda + 12.0 * std::sqrt(lambda) + 20.0));
    double term = std::exp(-lambda);
    double cumulative = term;
    std::int64_t n = 0;
    while (cumulative <= 1.0 - 1e-9 && n < cap) {
        ++n;
        term *= lambda / static_cast<double>(n);
        cumulative += term;
    }
    return n;
}

CoverageDistribution coverage_poisson(double lambda) {
    return coverage_poisson(lambda, poisson_truncation(lambda));
}

double total_variation(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = std::max(a.size(), b.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        sum += std::abs(x - y);
    }
    return 0.5 * sum;
}

double le_cam_bound(std::int64_t trials, double p) {
    return static_cast<double>(trials) * p * p;
}

}  // namespace spiroplanck::coverage
