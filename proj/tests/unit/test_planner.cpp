#include <doctest.h>

#include <cmath>
#include <numbers>
#include <unordered_set>

#include "spiroplanck/coverage.hpp"
#include "spiroplanck/error.hpp"
#include "spiroplanck/planner.hpp"

using namespace spiroplanck;
using namespace spiroplanck::planner;

namespace {

// Independent oracle: first N with (1 - e^{-cN})^N >= threshold.
std::int64_t first_crossing(double c, double threshold) {
    std::int64_t n = 1;
    while (std::pow(1.0 - std::exp(-c * static_cast<double>(n)), static_cast<double>(n)) <
           threshold) {
        ++n;
    }
    return n;
}

std::vector<curve::CurvePoint> line_points(std::size_t n) {
    std::vector<curve::CurvePoint> pts;
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back({static_cast<double>(i), 0.0, static_cast<double>(i)});
    }
    return pts;
}

}  // namespace

TEST_CASE("benchmark run converges at N = 321") {
    const double c = std::numbers::pi * 49.0 / 1e4;
    REQUIRE(first_crossing(c, 0.1) == 321);

    const PlannerConfig config;
    const auto result = run(config);
    CHECK(result.outcome == Outcome::converged);
    CHECK(result.n_final == 321);
    CHECK(result.placed.size() == 320);
    CHECK(result.p_final >= 0.1000);
    CHECK(result.p_final <= 0.1005);
    CHECK(result.trace.size() == 320);
    CHECK(result.trace.back().p >= 0.1);
    CHECK(result.density_final == doctest::Approx(4.9414110848313858).epsilon(1e-14));
}

TEST_CASE("tiny threshold never enters the loop") {
    PlannerConfig config;
    config.threshold = 1e-6;
    const auto result = run(config);
    CHECK(result.outcome == Outcome::converged);
    CHECK(result.placed.empty());
    CHECK(result.n_final == 1);
    CHECK(result.trace.empty());
    CHECK(result.p_final == doctest::Approx(0.015275925045414138).epsilon(1e-12));
}

TEST_CASE("short curve exhausts") {
    const auto pts = line_points(5);
    const auto result = run(PlannerConfig{}, pts);
    CHECK(result.outcome == Outcome::curve_exhausted);
    CHECK(result.n_final == 6);
    CHECK(result.placed.size() == 5);
    CHECK(result.p_final < 0.1);
}

TEST_CASE("duplicate selections are traced but do not add nodes") {
    std::vector<curve::CurvePoint> pts = {
        {1.0, 1.0, 0.0}, {1.0, 1.0, 0.1}, {2.0, 2.0, 0.2}, {1.0 + 1e-8, 1.0, 0.3}};
    const auto result = run(PlannerConfig{}, pts);
    REQUIRE(result.trace.size() == 4);
    CHECK(result.trace[0].accepted);
    CHECK_FALSE(result.trace[1].accepted);
    CHECK(result.trace[2].accepted);
    CHECK_FALSE(result.trace[3].accepted);
    CHECK(result.n_final == 3);
    CHECK(result.trace[1].n_nodes == result.trace[0].n_nodes);
    CHECK(result.trace[1].p == result.trace[0].p);
    CHECK(result.trace[1].radiance == result.trace[0].radiance);
}

TEST_CASE("iteration cap") {
    PlannerConfig config;
    config.max_iterations = 10;
    const auto result = run(config);
    CHECK(result.outcome == Outcome::iteration_capped);
    CHECK(result.trace.size() == 10);
    CHECK(result.p_final < config.threshold);
}

TEST_CASE("default cap is ten times the curve length") {
    // Every point identical: the loop can only stop on the cap.
    const std::vector<curve::CurvePoint> same(3, curve::CurvePoint{4.0, 4.0, 0.0});
    PlannerConfig config;
    config.select = SelectPolicy::random;
    const auto result = run(config, same);
    CHECK(result.outcome == Outcome::iteration_capped);
    CHECK(result.trace.size() == 30);
    CHECK(result.n_final == 2);
}

TEST_CASE("invalid configs are rejected before iterating") {
    PlannerConfig config;
    config.threshold = 0.0;
    CHECK_THROWS_AS(run(config), InvalidArgument);
    config.threshold = 1.0;
    CHECK_THROWS_AS(run(config), InvalidArgument);
    config = PlannerConfig{};
    config.max_iterations = -5;
    CHECK_THROWS_AS(run(config), InvalidArgument);
    config = PlannerConfig{};
    config.curve_params.r2 = 0.0;
    CHECK_THROWS_AS(run(config), InvalidArgument);
    CHECK_THROWS_AS(run(PlannerConfig{}, std::vector<curve::CurvePoint>{}), InvalidArgument);
}

TEST_CASE("trace invariants on the benchmark run") {
    const PlannerConfig config;
    const auto result = run(config);
    std::unordered_set<curve::QuantizedKey, curve::QuantizedKeyHash> keys;
    for (const auto& p : result.placed) {
        CHECK(keys.insert(curve::quantize(p, config.quantum)).second);
    }
    CHECK(result.n_final == static_cast<std::int64_t>(result.placed.size()) + 1);

    std::int64_t prev_n = 1;
    double prev_lambda = coverage::density(config.field, 1);
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        const auto& rec = result.trace[i];
        CHECK(rec.n_nodes >= prev_n);
        if (rec.accepted) {
            CHECK(rec.density > prev_lambda);
        }
        const auto replay = coverage::density_state(config.field, rec.n_nodes);
        CHECK(std::abs(replay.density - rec.density) <= 1e-12 * rec.density);
        CHECK(std::abs(replay.p_isolated - rec.p) <= 1e-12 * std::max(rec.p, 1e-300));
        const double wl = rec.density * config.wavelength_scale;
        CHECK(rec.radiance == radiometry::spectral_radiance(wl, config.temperature));
        if (i + 1 < result.trace.size()) {
            CHECK(rec.p < config.threshold);
        }
        prev_n = rec.n_nodes;
        prev_lambda = rec.density;
    }
}

TEST_CASE("outcome agrees with the threshold test") {
    for (double threshold : {0.01, 0.1, 0.3, 0.9, 0.9999}) {
        PlannerConfig config;
        config.threshold = threshold;
        const auto result = run(config);
        CHECK((result.p_final >= threshold) == (result.outcome == Outcome::converged));
    }
}

TEST_CASE("sequential runs are deterministic") {
    const auto a = run(PlannerConfig{});
    const auto b = run(PlannerConfig{});
    CHECK(a.placed == b.placed);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].p == b.trace[i].p);
        CHECK(a.trace[i].radiance == b.trace[i].radiance);
    }
}

TEST_CASE("random SELECT is reproducible per seed") {
    PlannerConfig config;
    config.select = SelectPolicy::random;
    config.seed = 99;
    const auto a = run(config);
    const auto b = run(config);
    CHECK(a.placed == b.placed);
    CHECK(a.trace.size() == b.trace.size());
    CHECK(a.outcome == Outcome::converged);
    CHECK(a.n_final == 321);
    // Draws with replacement revisit points, so the run needs extra passes.
    CHECK(a.trace.size() > 320);

    config.seed = 100;
    const auto c = run(config);
    CHECK_FALSE(c.placed == a.placed);
}

TEST_CASE("trace_to_rows") {
    PlanResult empty;
    const auto header_only = trace_to_rows(empty);
    CHECK(header_only.rows.empty());
    CHECK(header_only.header ==
          std::vector<std::string>{"iteration", "N", "lambda", "p", "P_lambda", "accepted"});

    const auto result = run(PlannerConfig{});
    const auto table = trace_to_rows(result);
    CHECK(table.rows.size() == result.trace.size());
    CHECK(std::stod(table.rows.back()[3]) >= 0.1);
    long prev = 0;
    for (const auto& row : table.rows) {
        const long n = std::stol(row[1]);
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("policy and outcome names") {
    CHECK(parse_policy("sequential") == SelectPolicy::sequential);
    CHECK(parse_policy("random") == SelectPolicy::random);
    CHECK_THROWS_AS(parse_policy("greedy"), InvalidArgument);
    CHECK(to_string(Outcome::curve_exhausted) == "curve-exhausted");
    CHECK(to_string(Outcome::iteration_capped) == "iteration-capped");
}
