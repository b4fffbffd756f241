#include "spiroplanck/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <system_error>
#include <utility>

#include "spiroplanck/cli/csv.hpp"
#include "spiroplanck/cli/io.hpp"
#include "spiroplanck/cli/reference.hpp"
#include "spiroplanck/cli/svg.hpp"
#include "spiroplanck/error.hpp"
#include "spiroplanck/format.hpp"

namespace spiroplanck::cli {

namespace {

using Artifact = std::pair<std::string, std::string>;  // file name, contents

const char* const kPalette[] = {"#1f4fd8", "#2ca02c", "#d62728", "#9467bd", "#ff7f0e",
                                "#8c564b"};

// Domain validation errors become config errors so they map to the usage exit code.
template <typename F>
auto as_config(F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const RangeError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

CommandResult finish(Command command, const Settings& settings, const RunOptions& options,
                     std::vector<Artifact> artifacts, std::string seed) {
    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + options.out_dir.string() +
                      "': " + ec.message());
    }
    CommandResult result;
    result.manifest.command = command;
    result.manifest.config = settings.entries();
    result.manifest.seed = std::move(seed);
    result.manifest.output_dir = options.out_dir.string();
    for (const auto& [name, contents] : artifacts) {
        const auto path = options.out_dir / name;
        write_file(path, contents);
        result.artifacts.push_back(path);
        result.manifest.artifacts.push_back(name);
    }
    const auto manifest_path = options.out_dir / (std::string(to_string(command)) + ".manifest");
    write_file(manifest_path, manifest_to_text(result.manifest));
    result.artifacts.push_back(manifest_path);
    return result;
}

void materialize_t_max(Settings& settings) {
    if (settings.text("curve.t_max") == "auto") {
        auto params = as_config([&] {
            curve::SpirographParams p;
            p.r1 = settings.number("curve.r1");
            p.r2 = settings.number("curve.r2");
            p.a = settings.number("curve.a");
            return curve::default_t_max(p);
        });
        settings.set("curve.t_max", fmt::shortest(params));
    }
}

}  // namespace

radiometry::PhysicalConstants constants_named(std::string_view name) {
    if (name == "prose") {
        return radiometry::kProseConstants;
    }
    if (name == "listing") {
        return radiometry::kListingConstants;
    }
    throw ConfigError("unknown constant set '" + std::string(name) +
                      "' (expected prose or listing)");
}

coverage::FieldSpec field_from(const Settings& settings) {
    const double side = settings.number("field.side_length");
    const double range = settings.number("field.range");
    return as_config([&] { return coverage::FieldSpec(side, range); });
}

curve::SpirographParams curve_from(const Settings& settings) {
    curve::SpirographParams p;
    p.r1 = settings.number("curve.r1");
    p.r2 = settings.number("curve.r2");
    p.a = settings.number("curve.a");
    p.t_step = settings.number("curve.t_step");
    const auto& t_max = settings.text("curve.t_max");
    p.t_max = t_max == "auto" ? 0.0 : settings.number("curve.t_max");
    if (t_max != "auto" && !(p.t_max > 0.0)) {
        throw ConfigError("config key 'curve.t_max': must be > 0");
    }
    return as_config([&] {
        auto r = curve::resolved(p);
        r.validate();
        return r;
    });
}

planner::PlannerConfig planner_from(const Settings& settings) {
    planner::PlannerConfig c;
    c.field = field_from(settings);
    c.curve_params = curve_from(settings);
    c.quantum = settings.number("curve.quantum");
    c.threshold = settings.number("planner.threshold");
    c.temperature = settings.number("planner.temperature");
    c.wavelength_scale = settings.number("planner.wavelength_scale");
    c.constants = constants_named(settings.text("planner.constants"));
    const auto& cap = settings.text("planner.max_iterations");
    c.max_iterations = cap == "auto" ? 0 : settings.integer("planner.max_iterations");
    if (cap != "auto" && c.max_iterations < 1) {
        throw ConfigError("config key 'planner.max_iterations': must be >= 1");
    }
    c.select = as_config([&] { return planner::parse_policy(settings.text("planner.select")); });
    c.seed = settings.unsigned_integer("planner.seed");
    as_config([&] {
        c.validate();
        return 0;
    });
    return c;
}

oracle::TrialConfig trial_from(const Settings& settings) {
    oracle::TrialConfig c;
    c.field = field_from(settings);
    c.n_nodes = settings.integer("montecarlo.n_nodes");
    c.trials = settings.integer("montecarlo.trials");
    c.seed = settings.unsigned_integer("montecarlo.seed");
    c.topology =
        as_config([&] { return oracle::parse_topology(settings.text("montecarlo.topology")); });
    const auto threads = settings.integer("montecarlo.threads");
    if (threads < 1 || threads > 1024) {
        throw ConfigError("config key 'montecarlo.threads': must lie in [1, 1024]");
    }
    c.threads = static_cast<unsigned>(threads);
    as_config([&] {
        c.validate();
        return 0;
    });
    return c;
}

FieldMapping map_curve_to_field(const curve::Bounds& bounds, double side_length) {
    FieldMapping m;
    m.side = side_length;
    m.curve_cx = 0.5 * (bounds.min_x + bounds.max_x);
    m.curve_cy = 0.5 * (bounds.min_y + bounds.max_y);
    const double extent = std::max(bounds.width(), bounds.height());
    m.scale = extent > 0.0 ? 0.9 * side_length / extent : 1.0;
    return m;
}

std::string spirograph_csv(std::span<const curve::CurvePoint> points) {
    std::vector<Row> rows;
    rows.reserve(points.size());
    for (const auto& p : points) {
        rows.push_back({fmt::significant(p.t, 9), fmt::significant(p.x, 9),
                        fmt::significant(p.y, 9)});
    }
    return to_csv({"t", "x", "y"}, rows);
}

std::string spirograph_svg(std::span<const curve::CurvePoint> points) {
    const auto b = curve::bounding_box(points);
    const double extent = std::max({b.width(), b.height(), 1e-12});
    const double span = 1.1 * extent;  // 5% margin on each side
    const double size = 600.0;
    const double cx = 0.5 * (b.min_x + b.max_x);
    const double cy = 0.5 * (b.min_y + b.max_y);
    std::vector<double> xy;
    xy.reserve(2 * points.size());
    for (const auto& p : points) {
        xy.push_back(size / 2 + (p.x - cx) / span * size);
        xy.push_back(size / 2 - (p.y - cy) / span * size);
    }
    SvgWriter svg(size, size);
    svg.rect(0, 0, size, size, "none", "#ffffff", 0.0);
    svg.polyline(xy, "#1f4fd8", 1.2);
    return svg.str();
}

std::string placement_csv(const planner::PlanResult& result, const FieldMapping& mapping) {
    std::vector<Row> rows;
    rows.reserve(result.placed.size());
    for (std::size_t i = 0; i < result.placed.size(); ++i) {
        const auto& p = result.placed[i];
        rows.push_back({fmt::integer(static_cast<std::int64_t>(i)), fmt::shortest(p.t),
                        fmt::shortest(p.x), fmt::shortest(p.y), fmt::shortest(mapping.x(p.x)),
                        fmt::shortest(mapping.y(p.y))});
    }
    return to_csv({"index", "t", "x", "y", "field_x", "field_y"}, rows);
}

std::string trace_csv(const planner::PlanResult& result) {
    const auto table = planner::trace_to_rows(result);
    return to_csv(table.header, table.rows);
}

std::string placement_svg(const planner::PlanResult& result,
                          std::span<const curve::CurvePoint> curve_points,
                          const FieldMapping& mapping, const coverage::FieldSpec& field) {
    const double size = 600.0;
    const double pad = 20.0;
    const double px_per_m = (size - 2 * pad) / field.side_length();
    auto sx = [&](double fx) { return pad + fx * px_per_m; };
    auto sy = [&](double fy) { return size - pad - fy * px_per_m; };

    SvgWriter svg(size, size);
    svg.rect(0, 0, size, size, "none", "#ffffff", 0.0);
    svg.rect(pad, pad, size - 2 * pad, size - 2 * pad, "#000000", "none", 1.5);
    for (const auto& p : result.placed) {
        svg.circle(sx(mapping.x(p.x)), sy(mapping.y(p.y)), field.range() * px_per_m, "#d62728",
                   "#d62728", 0.4, 0.15);
    }
    std::vector<double> xy;
    xy.reserve(2 * curve_points.size());
    for (const auto& p : curve_points) {
        xy.push_back(sx(mapping.x(p.x)));
        xy.push_back(sy(mapping.y(p.y)));
    }
    svg.polyline(xy, "#1f4fd8", 0.8);
    for (const auto& p : result.placed) {
        svg.circle(sx(mapping.x(p.x)), sy(mapping.y(p.y)), 1.5, "none", "#000000", 0.0);
    }
    return svg.str();
}

CommandResult cmd_spirograph(Settings settings, const RunOptions& options) {
    materialize_t_max(settings);
    const auto params = curve_from(settings);
    const auto points = as_config([&] { return curve::generate_curve(params); });
    auto result = finish(Command::spirograph, settings, options,
                         {{"spirograph.csv", spirograph_csv(points)},
                          {"spirograph.svg", spirograph_svg(points)}},
                         "none");
    result.summary.push_back("spirograph: " + std::to_string(points.size()) + " points, t_max=" +
                             settings.text("curve.t_max"));
    return result;
}

CommandResult cmd_plan(Settings settings, const RunOptions& options) {
    materialize_t_max(settings);
    const auto params = curve_from(settings);
    const auto points = as_config([&] { return curve::generate_curve(params); });
    if (settings.text("planner.max_iterations") == "auto") {
        settings.set("planner.max_iterations",
                     fmt::integer(10 * static_cast<std::int64_t>(points.size())));
    }
    const auto config = planner_from(settings);
    const auto plan = planner::run(config, points);
    const auto mapping = map_curve_to_field(curve::bounding_box(points), config.field.side_length());

    const std::string seed =
        config.select == planner::SelectPolicy::random ? fmt::integer(static_cast<std::int64_t>(config.seed)) : "none";
    auto result = finish(Command::plan, settings, options,
                         {{"placement.csv", placement_csv(plan, mapping)},
                          {"trace.csv", trace_csv(plan)},
                          {"placement.svg", placement_svg(plan, points, mapping, config.field)}},
                         seed);
    result.summary.push_back("plan: outcome=" + std::string(planner::to_string(plan.outcome)) +
                             " N=" + fmt::integer(plan.n_final) +
                             " lambda=" + fmt::significant(plan.density_final, 6) +
                             " p=" + fmt::significant(plan.p_final, 6) +
                             " placed=" + std::to_string(plan.placed.size()) +
                             " iterations=" + std::to_string(plan.trace.size()));
    if (plan.outcome != planner::Outcome::converged) {
        result.warnings.push_back("planner did not converge: " +
                                  std::string(planner::to_string(plan.outcome)) + " with p=" +
                                  fmt::significant(plan.p_final, 6) + " < threshold " +
                                  fmt::shortest(config.threshold));
        if (options.strict) {
            result.exit_code = kExitNotConverged;
        }
    }
    return result;
}

CommandResult cmd_planck(Settings settings, const RunOptions& options) {
    const auto temperatures = settings.number_list("planck.temperatures");
    if (temperatures.empty()) {
        throw ConfigError("config key 'planck.temperatures': at least one temperature required");
    }
    for (double t : temperatures) {
        if (!(t > 0.0)) {
            throw ConfigError("config key 'planck.temperatures': temperature " +
                              fmt::shortest(t) + " must be > 0");
        }
    }
    const auto form =
        as_config([&] { return radiometry::parse_form(settings.text("planck.form")); });
    const auto constants = constants_named(settings.text("planck.constants"));
    const auto grid = as_config([&] {
        return radiometry::wavelength_grid(settings.number("planck.lambda_min"),
                                           settings.number("planck.lambda_step"),
                                           settings.number("planck.lambda_max"));
    });

    std::vector<std::vector<radiometry::SpectralSample>> curves;
    for (double t : temperatures) {
        radiometry::SpectralParams sp{t, grid, constants, form};
        curves.push_back(as_config([&] { return radiometry::spectral_curve(sp); }));
    }

    Row header{"lambda_m"};
    for (double t : temperatures) {
        header.push_back("T_" + fmt::shortest(t));
    }
    std::vector<Row> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Row row{fmt::shortest(grid[i])};
        for (const auto& c : curves) {
            row.push_back(fmt::shortest(c[i].value));
        }
        rows.push_back(std::move(row));
    }

    LinePlot plot;
    plot.title = "Wavelength and Intensity";
    plot.x_label = "Wavelength (nm)";
    plot.y_label = form == radiometry::SpectralForm::radiance ? "Intensity (W m^-3)"
                                                              : "Intensity (J m^-4)";
    for (std::size_t k = 0; k < curves.size(); ++k) {
        PlotSeries s;
        s.label = "T = " + fmt::shortest(temperatures[k]);
        s.color = kPalette[k % std::size(kPalette)];
        if (k % 3 == 1) {
            s.dash = "6,4";
        }
        for (const auto& sample : curves[k]) {
            s.x.push_back(sample.wavelength * 1e9);
            s.y.push_back(sample.value);
        }
        plot.series.push_back(std::move(s));
    }

    auto result = finish(Command::planck, settings, options,
                         {{"planck.csv", to_csv(header, rows)}, {"planck.svg", plot.render()}},
                         "none");
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const auto peak = std::max_element(
            curves[k].begin(), curves[k].end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
        result.summary.push_back(
            "planck: T=" + fmt::shortest(temperatures[k]) + " grid peak at " +
            fmt::significant(peak->wavelength * 1e9, 6) + " nm, Wien peak " +
            fmt::significant(radiometry::wien_peak(temperatures[k], constants) * 1e9, 6) + " nm");
    }
    return result;
}

CommandResult cmd_coverage(Settings settings, const RunOptions& options) {
    const auto field = field_from(settings);
    const auto n = settings.integer("coverage.n_nodes");
    if (n < 1) {
        throw ConfigError("config key 'coverage.n_nodes': must be >= 1");
    }
    const auto binomial = as_config([&] { return coverage::coverage_binomial(field, n); });
    const double lambda = coverage::density(field, n);
    const auto poisson = coverage::coverage_poisson(lambda);
    const double tv = coverage::total_variation(binomial.mass, poisson.mass);
    const double p = coverage::p_r(field);
    const double bound = coverage::le_cam_bound(n - 1, p);

    std::vector<Row> rows;
    rows.reserve(binomial.mass.size());
    for (std::size_t k = 0; k < binomial.mass.size(); ++k) {
        const double pm = k < poisson.mass.size() ? poisson.mass[k] : 0.0;
        rows.push_back({fmt::integer(static_cast<std::int64_t>(k)),
                        fmt::shortest(binomial.mass[k]), fmt::shortest(pm)});
    }
    const std::string comment = "tv_distance=" + fmt::shortest(tv) +
                                ",le_cam_bound=" + fmt::shortest(bound) +
                                ",lambda=" + fmt::shortest(lambda) + ",p_r=" + fmt::shortest(p);
    auto result = finish(Command::coverage, settings, options,
                         {{"coverage.csv", to_csv({"n", "binomial", "poisson"}, rows, {comment})}},
                         "none");
    result.summary.push_back("coverage: N=" + fmt::integer(n) + " " + comment);
    return result;
}

CommandResult cmd_montecarlo(Settings settings, const RunOptions& options) {
    const auto config = trial_from(settings);
    const auto stats = oracle::simulate(config);
    const double lambda = coverage::density(config.field, config.n_nodes);
    const auto report = oracle::compare_to_formula(stats, config.field, lambda, config.n_nodes);

    auto metric = [](std::string name, double value, std::string err) {
        return Row{std::move(name), fmt::shortest(value), std::move(err)};
    };
    const std::string na = "";
    std::vector<Row> rows = {
        metric("trials", static_cast<double>(stats.trials), na),
        metric("n_nodes", static_cast<double>(stats.n_nodes), na),
        metric("density", lambda, na),
        metric("p_no_isolated", stats.p_no_isolated, fmt::shortest(stats.p_no_isolated_stderr)),
        metric("mean_isolated_count", stats.mean_isolated_count,
               fmt::shortest(stats.mean_isolated_count_stderr)),
        metric("formula_p", report.formula_p, na),
        metric("p_gap", report.p_gap, fmt::shortest(report.p_stderr)),
        metric("p_gap_in_stderr", report.p_gap_in_stderr, na),
        metric("predicted_isolated", report.predicted_isolated, na),
        metric("tv_binomial", report.tv_binomial, na),
        metric("tv_poisson", report.tv_poisson, na),
        metric("stderr_reliable", report.stderr_reliable ? 1.0 : 0.0, na),
        metric("degenerate", report.degenerate ? 1.0 : 0.0, na),
    };

    const auto binomial = coverage::coverage_binomial(config.field, config.n_nodes);
    const auto poisson = coverage::coverage_poisson(lambda);
    std::vector<Row> hist;
    for (std::size_t k = 0; k < stats.coverage_histogram.size(); ++k) {
        hist.push_back({fmt::integer(static_cast<std::int64_t>(k)),
                        fmt::shortest(stats.coverage_histogram[k]),
                        fmt::shortest(stats.coverage_histogram_stderr[k]),
                        fmt::shortest(k < binomial.mass.size() ? binomial.mass[k] : 0.0),
                        fmt::shortest(k < poisson.mass.size() ? poisson.mass[k] : 0.0)});
    }

    std::string text;
    text += "Monte Carlo isolation check (" + std::string(oracle::to_string(config.topology)) +
            " topology)\n";
    text += "  field            L=" + fmt::shortest(config.field.side_length()) +
            " m, R=" + fmt::shortest(config.field.range()) + " m\n";
    text += "  nodes N          " + fmt::integer(config.n_nodes) + "\n";
    text += "  trials           " + fmt::integer(config.trials) + " (seed " +
            std::to_string(config.seed) + ")\n";
    text += "  density lambda   " + fmt::significant(lambda, 8) + "\n";
    text += "  P(no isolated)   " + fmt::significant(stats.p_no_isolated, 6) + " +/- " +
            fmt::significant(stats.p_no_isolated_stderr, 3) + "\n";
    text += "  (1-e^-l)^N       " + fmt::significant(report.formula_p, 6) + "\n";
    text += "  gap              " + fmt::significant(report.p_gap, 4) + " (" +
            fmt::significant(report.p_gap_in_stderr, 3) + " stderr)\n";
    text += "  isolated/trial   " + fmt::significant(stats.mean_isolated_count, 6) + " +/- " +
            fmt::significant(stats.mean_isolated_count_stderr, 3) + " (N e^-l = " +
            fmt::significant(report.predicted_isolated, 6) + ")\n";
    text += "  TV vs binomial   " + fmt::significant(report.tv_binomial, 4) + "\n";
    text += "  TV vs poisson    " + fmt::significant(report.tv_poisson, 4) + "\n";
    if (!report.stderr_reliable) {
        text += "  note: fewer than " + std::to_string(oracle::kMinReliableTrials) +
                " trials; standard errors are unreliable\n";
    }
    if (report.degenerate) {
        text += "  note: N = 1 is a degenerate case; the asymptotic formula does not apply\n";
    }

    auto result = finish(Command::montecarlo, settings, options,
                         {{"montecarlo.csv", to_csv({"metric", "value", "stderr"}, rows)},
                          {"montecarlo_histogram.csv",
                           to_csv({"n", "empirical", "stderr", "binomial", "poisson"}, hist)},
                          {"montecarlo_report.txt", text}},
                         std::to_string(config.seed));
    result.summary.push_back(text);
    if (!report.stderr_reliable) {
        result.warnings.push_back("standard errors unreliable with " +
                                  fmt::integer(stats.trials) + " trial(s)");
    }
    return result;
}

CommandResult cmd_bench(Settings settings, const RunOptions& options) {
    const auto& source = settings.text("bench.reference");
    std::vector<ReferenceRow> rows;
    if (source == "bundled") {
        rows = bundled_reference();
    } else {
        rows = parse_reference(read_file(source), source);
    }

    LinePlot plot;
    plot.title = "OSPF overhead";
    plot.x_label = "Number of nodes";
    plot.y_label = "OSPF overhead";
    PlotSeries sim{"Pt-to-Mpt simulation", {}, {}, kPalette[0], "", true};
    PlotSeries emu{"Pt-to-Mpt emulation", {}, {}, kPalette[1], "6,4", true};
    PlotSeries spiro{"SpiroPlanck", {}, {}, kPalette[2], "", true};
    for (const auto& r : rows) {
        const auto x = static_cast<double>(r.nodes);
        sim.x.push_back(x);
        sim.y.push_back(static_cast<double>(r.pt_mpt_simulation));
        emu.x.push_back(x);
        emu.y.push_back(static_cast<double>(r.pt_mpt_emulation));
        spiro.x.push_back(x);
        spiro.y.push_back(static_cast<double>(r.spiroplanck));
    }
    plot.series = {sim, emu, spiro};

    auto result = finish(Command::bench, settings, options,
                         {{"table1_echo.csv", reference_to_csv(rows)},
                          {"ospf_overhead.svg", plot.render()}},
                         "none");
    result.summary.push_back("bench: " + std::to_string(rows.size()) + " reference rows from " +
                             source);
    return result;
}

CommandResult execute(Command command, Settings settings, const RunOptions& options) {
    switch (command) {
        case Command::spirograph:
            return cmd_spirograph(std::move(settings), options);
        case Command::plan:
            return cmd_plan(std::move(settings), options);
        case Command::planck:
            return cmd_planck(std::move(settings), options);
        case Command::coverage:
            return cmd_coverage(std::move(settings), options);
        case Command::montecarlo:
            return cmd_montecarlo(std::move(settings), options);
        case Command::bench:
            return cmd_bench(std::move(settings), options);
    }
    throw ConfigError("unknown command");
}

CommandResult replay(const std::filesystem::path& manifest_path,
                     const std::optional<std::filesystem::path>& out_dir, bool strict) {
    const auto manifest = parse_manifest(read_file(manifest_path), manifest_path.string());
    RunOptions options;
    options.out_dir = out_dir.value_or(std::filesystem::path(manifest.output_dir));
    options.strict = strict;
    auto result = execute(manifest.command, settings_from_manifest(manifest), options);
    if (manifest.tool_version != kToolVersion) {
        result.warnings.push_back("manifest was written by '" + manifest.tool_version +
                                  "', replaying with '" + std::string(kToolVersion) + "'");
    }
    return result;
}

}  // namespace spiroplanck::cli
