#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "spiroplanck/cli/commands.hpp"
#include "spiroplanck/cli/csv.hpp"
#include "spiroplanck/cli/io.hpp"
#include "spiroplanck/cli/reference.hpp"
#include "spiroplanck/cli/settings.hpp"
#include "spiroplanck/cli/svg.hpp"
#include "spiroplanck/error.hpp"
#include "spiroplanck/format.hpp"

using namespace spiroplanck;
using namespace spiroplanck::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "spiroplanck_unit" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

CsvTable load(const fs::path& p) { return parse_csv(read_file(p), p.string()); }

void check_svg(const std::string& svg) {
    CHECK(svg.starts_with("<?xml version=\"1.0\""));
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") != std::string::npos);
    CHECK(svg.ends_with("</svg>\n"));
    CHECK(svg.find("href") == std::string::npos);
    CHECK(svg.find("<image") == std::string::npos);
}

}  // namespace

TEST_CASE("number formatting is locale independent and lossless") {
    CHECK(fmt::shortest(0.1) == "0.1");
    CHECK(fmt::shortest(-0.0) == "0");
    CHECK(fmt::shortest(1e-9) == "1e-09");
    CHECK(fmt::significant(165.0, 9) == "165");
    CHECK(fmt::significant(-219.99999999999986, 9) == "-220");
    CHECK(fmt::parse_double(fmt::shortest(std::numbers::pi), "pi") == std::numbers::pi);
    CHECK_THROWS_AS(fmt::parse_double("1,5", "x"), ParseError);
    CHECK_THROWS_AS(fmt::parse_int("12a", "x"), ParseError);
    CHECK_THROWS_AS(fmt::parse_double("", "x"), ParseError);
}

TEST_CASE("csv writer and reader") {
    const auto text = to_csv({"a", "b"}, {{"1", "2"}, {"3", "4"}}, {"note=5"});
    CHECK(text == "a,b\n1,2\n3,4\n# note=5\n");
    const auto table = parse_csv("a,b\r\n1,2\r\n\n# hi\n", "mem");
    CHECK(table.header == Row{"a", "b"});
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0] == Row{"1", "2"});
    CHECK(table.comments == std::vector<std::string>{"hi"});
    CHECK_THROWS_AS(parse_csv("", "empty.csv"), ParseError);
}

TEST_CASE("svg helpers") {
    CHECK(xml_escape("a<b & \"c\"") == "a&lt;b &amp; &quot;c&quot;");
    const auto ticks = nice_ticks(0.0, 712.0);
    REQUIRE_FALSE(ticks.empty());
    CHECK(ticks.front() == 0.0);
    CHECK(ticks.back() <= 712.0);
    LinePlot plot;
    plot.title = "T < 5";
    plot.series.push_back({"s", {0, 1}, {0, 1}, "#000", "", true});
    check_svg(plot.render());
    plot.series.push_back({"bad", {0, 1}, {0}, "#000", "", false});
    CHECK_THROWS_AS(plot.render(), InvalidArgument);
}

TEST_CASE("bundled reference table") {
    const auto& rows = bundled_reference();
    REQUIRE(rows.size() == 5);
    CHECK(rows[2] == ReferenceRow{20, 250, 109, 18});
    CHECK(rows[4] == ReferenceRow{30, 712, 458, 45});
    const auto file = read_file(fs::path(SPIROPLANCK_DATA_DIR) / "table1_ospf_overhead.csv");
    CHECK(parse_reference(file, "table1") == rows);
    CHECK(reference_to_csv(rows) == file);
    // parse -> emit -> parse fixpoint
    CHECK(parse_reference(reference_to_csv(parse_reference(file, "a")), "b") == rows);
}

TEST_CASE("reference parse errors name the row and column") {
    auto message = [](std::string_view text) {
        try {
            parse_reference(text, "ref.csv");
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("").find("empty") != std::string::npos);
    CHECK(message("nodes,pt_mpt_sim,pt_mpt_emu,spiroplanck\n").find("no data rows") !=
          std::string::npos);
    CHECK(message("nodes,sim,pt_mpt_emu,spiroplanck\n10,1,2,3\n").find("column 2") !=
          std::string::npos);
    CHECK(message("nodes,pt_mpt_sim,pt_mpt_emu,spiroplanck\n10,1,x,3\n")
              .find("row 1, column pt_mpt_emu") != std::string::npos);
    CHECK(message("nodes,pt_mpt_sim,pt_mpt_emu,spiroplanck\n10,1,2,3\n10,1,2,3\n")
              .find("row 2, column nodes") != std::string::npos);
    CHECK(message("nodes,pt_mpt_sim,pt_mpt_emu,spiroplanck\n10,1,-2,3\n").find("nonnegative") !=
          std::string::npos);
    CHECK(message("nodes,pt_mpt_sim,pt_mpt_emu,spiroplanck\n10,1,2\n").find("row 1 has 3") !=
          std::string::npos);
}

TEST_CASE("settings precedence: defaults < TOML < flags") {
    auto s = Settings::defaults(Command::plan);
    CHECK(s.text("field.side_length") == "100");
    CHECK(s.text("curve.t_max") == "auto");
    CHECK_FALSE(s.contains("planck.form"));

    s.merge_toml("[field]\nrange = 5.5\n[planner]\nthreshold = 0.2\n"
                 "[planck]\nform = \"energy-density\"\n",
                 "cfg.toml");
    CHECK(s.number("field.range") == 5.5);
    CHECK(s.number("planner.threshold") == 0.2);
    CHECK_FALSE(s.contains("planck.form"));  // other commands' sections are ignored

    s.set("planner.threshold", "0.3");
    CHECK(s.number("planner.threshold") == 0.3);
    CHECK_THROWS_AS(s.set("planck.form", "radiance"), ConfigError);
}

TEST_CASE("settings errors name the key") {
    auto s = Settings::defaults(Command::planck);
    s.merge_toml("[planck]\ntemperatures = [4500, 6000.5]\n", "cfg");
    CHECK(s.number_list("planck.temperatures") == std::vector<double>{4500.0, 6000.5});
    try {
        s.merge_toml("[planck]\ncolour = 1\n", "cfg.toml");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("planck.colour") != std::string::npos);
    }
    CHECK_THROWS_AS(s.merge_toml("[planck\n", "broken.toml"), ConfigError);
    CHECK_THROWS_AS(s.merge_toml("x = 1\n", "flat.toml"), ConfigError);
    s.set("planck.lambda_min", "abc");
    try {
        (void)s.number("planck.lambda_min");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("planck.lambda_min") != std::string::npos);
    }
}

TEST_CASE("manifest text round trip") {
    RunManifest m;
    m.command = Command::montecarlo;
    m.config = Settings::defaults(Command::montecarlo).entries();
    m.seed = "20121001";
    m.output_dir = "out";
    m.artifacts = {"montecarlo.csv", "montecarlo_report.txt"};
    const auto text = manifest_to_text(m);
    const auto back = parse_manifest(text, "m");
    CHECK(back.command == m.command);
    CHECK(back.config == m.config);
    CHECK(back.seed == m.seed);
    CHECK(back.artifacts == m.artifacts);
    CHECK(manifest_to_text(back) == text);
    CHECK_THROWS_AS(parse_manifest("seed=1\n", "m"), ParseError);
    CHECK_THROWS_AS(parse_manifest("command=plan\nbogus\n", "m"), ParseError);
}

TEST_CASE("flag names") {
    CHECK(flag_name("field.side_length") == "side-length");
    CHECK(flag_name("montecarlo.n_nodes") == "n-nodes");
}

TEST_CASE("cmd_spirograph") {
    const auto dir = scratch("spiro");
    const auto result = cmd_spirograph(Settings::defaults(Command::spirograph), {dir, false});
    const auto table = load(dir / "spirograph.csv");
    CHECK(table.header == Row{"t", "x", "y"});
    CHECK(table.rows.size() == 1257);
    CHECK(table.rows[0] == Row{"0", "165", "0"});
    check_svg(read_file(dir / "spirograph.svg"));
    CHECK(result.manifest.config.at("curve.t_max") != "auto");

    auto bad = Settings::defaults(Command::spirograph);
    bad.set("curve.t_max", "0");
    CHECK_THROWS_AS(cmd_spirograph(bad, {dir, false}), ConfigError);
}

TEST_CASE("cmd_plan benchmark outputs") {
    const auto dir = scratch("plan");
    const auto result = cmd_plan(Settings::defaults(Command::plan), {dir, true});
    CHECK(result.exit_code == kExitOk);
    const auto placement = load(dir / "placement.csv");
    CHECK(placement.header == Row{"index", "t", "x", "y", "field_x", "field_y"});
    CHECK(placement.rows.size() == 320);
    for (const auto& row : placement.rows) {
        const double fx = std::stod(row[4]);
        const double fy = std::stod(row[5]);
        CHECK(fx >= 0.0);
        CHECK(fx <= 100.0);
        CHECK(fy >= 0.0);
        CHECK(fy <= 100.0);
    }
    const auto trace = load(dir / "trace.csv");
    CHECK(trace.rows.size() == 320);
    CHECK(std::stod(trace.rows.back()[3]) >= 0.1);
    const auto svg = read_file(dir / "placement.svg");
    check_svg(svg);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(result.manifest.config.at("planner.max_iterations") == "12570");
}

TEST_CASE("cmd_plan forced exhaustion is a warning unless strict") {
    const auto dir = scratch("plan_short");
    auto s = Settings::defaults(Command::plan);
    s.set("planner.threshold", "0.9999");
    s.set("curve.t_max", "0.05");
    const auto lax = cmd_plan(s, {dir, false});
    CHECK(lax.exit_code == kExitOk);
    REQUIRE_FALSE(lax.warnings.empty());
    CHECK(lax.warnings[0].find("curve-exhausted") != std::string::npos);
    CHECK(load(dir / "placement.csv").rows.size() == 6);
    CHECK(cmd_plan(s, {dir, true}).exit_code == kExitNotConverged);
}

TEST_CASE("curve to field mapping keeps a 5% margin") {
    const curve::Bounds b{-275.0, -200.0, 275.0, 250.0};
    const auto m = map_curve_to_field(b, 100.0);
    CHECK(m.x(-275.0) == doctest::Approx(5.0));
    CHECK(m.x(275.0) == doctest::Approx(95.0));
    CHECK(m.y(25.0) == doctest::Approx(50.0));
}

TEST_CASE("cmd_planck defaults and forms") {
    const auto dir = scratch("planck");
    cmd_planck(Settings::defaults(Command::planck), {dir, false});
    const auto table = load(dir / "planck.csv");
    CHECK(table.header == Row{"lambda_m", "T_4500", "T_6000", "T_7500"});
    CHECK(table.rows.size() == 300);
    const auto svg = read_file(dir / "planck.svg");
    check_svg(svg);
    CHECK(svg.find("T = 6000") != std::string::npos);

    const auto dir2 = scratch("planck_energy");
    auto s = Settings::defaults(Command::planck);
    s.set("planck.form", "energy-density");
    cmd_planck(s, {dir2, false});
    const auto energy = load(dir2 / "planck.csv");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        for (std::size_t c = 1; c < 4; ++c) {
            const double r = std::stod(table.rows[i][c]);
            const double e = std::stod(energy.rows[i][c]);
            if (r > 0.0) {
                CHECK(e / r == doctest::Approx(4.0 / 3e8).epsilon(1e-13));
            } else {
                CHECK(e == 0.0);
            }
        }
    }

    auto single = Settings::defaults(Command::planck);
    single.set("planck.temperatures", "6000");
    const auto dir3 = scratch("planck_single");
    cmd_planck(single, {dir3, false});
    const auto one = load(dir3 / "planck.csv");
    std::size_t best = 0;
    for (std::size_t i = 0; i < one.rows.size(); ++i) {
        if (std::stod(one.rows[i][1]) > std::stod(one.rows[best][1])) {
            best = i;
        }
    }
    CHECK(std::abs(std::stod(one.rows[best][0]) - 483.5e-9) <= 10e-9);

    auto bad = Settings::defaults(Command::planck);
    bad.set("planck.temperatures", "4500,0");
    CHECK_THROWS_AS(cmd_planck(bad, {dir3, false}), ConfigError);
}

TEST_CASE("cmd_coverage") {
    const auto dir = scratch("coverage");
    auto s = Settings::defaults(Command::coverage);
    s.set("coverage.n_nodes", "1");
    cmd_coverage(s, {dir, false});
    auto table = load(dir / "coverage.csv");
    CHECK(table.header == Row{"n", "binomial", "poisson"});
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0][1] == "1");
    CHECK(std::stod(table.rows[0][2]) ==
          doctest::Approx(std::exp(-std::numbers::pi * 49.0 / 1e4)).epsilon(1e-12));

    s.set("coverage.n_nodes", "100");
    cmd_coverage(s, {dir, false});
    table = load(dir / "coverage.csv");
    CHECK(table.rows.size() == 100);
    REQUIRE(table.comments.size() == 1);
    const auto& c = table.comments[0];
    const double tv = std::stod(c.substr(c.find("tv_distance=") + 12));
    CHECK(tv < 99.0 * std::pow(std::numbers::pi * 49.0 / 1e4, 2));

    auto half = Settings::defaults(Command::coverage);
    half.set("field.side_length", "10");
    half.set("field.range", fmt::shortest(std::sqrt(50.0 / std::numbers::pi)));
    half.set("coverage.n_nodes", "2");
    cmd_coverage(half, {dir, false});
    table = load(dir / "coverage.csv");
    REQUIRE(table.rows.size() == 2);
    CHECK(std::stod(table.rows[0][1]) == doctest::Approx(0.5));
    CHECK(std::stod(table.rows[1][1]) == doctest::Approx(0.5));

    auto too_big = Settings::defaults(Command::coverage);
    too_big.set("field.side_length", "10");
    too_big.set("field.range", "9");
    CHECK_THROWS_AS(cmd_coverage(too_big, {dir, false}), RangeError);
}

TEST_CASE("cmd_montecarlo small run") {
    const auto dir = scratch("mc");
    auto s = Settings::defaults(Command::montecarlo);
    s.set("montecarlo.trials", "1");
    const auto result = cmd_montecarlo(s, {dir, false});
    CHECK_FALSE(result.warnings.empty());
    CHECK(read_file(dir / "montecarlo_report.txt").find("unreliable") != std::string::npos);
    const auto table = load(dir / "montecarlo.csv");
    CHECK(table.header == Row{"metric", "value", "stderr"});
    CHECK(result.manifest.seed == "20121001");
}

TEST_CASE("cmd_bench") {
    const auto dir = scratch("bench");
    cmd_bench(Settings::defaults(Command::bench), {dir, false});
    CHECK(parse_reference(read_file(dir / "table1_echo.csv"), "echo") == bundled_reference());
    const auto svg = read_file(dir / "ospf_overhead.svg");
    check_svg(svg);
    CHECK(svg.find("SpiroPlanck") != std::string::npos);

    const auto empty_dir = scratch("bench_empty");
    write_file(empty_dir / "empty.csv", "");
    auto s = Settings::defaults(Command::bench);
    s.set("bench.reference", (empty_dir / "empty.csv").string());
    const auto out = empty_dir / "out";
    CHECK_THROWS_AS(cmd_bench(s, {out, false}), ParseError);
    CHECK_FALSE(fs::exists(out / "ospf_overhead.svg"));

    s.set("bench.reference", (empty_dir / "missing.csv").string());
    CHECK_THROWS_AS(cmd_bench(s, {out, false}), IoError);
}

TEST_CASE("unwritable output path is an I/O error naming the path") {
    const auto dir = scratch("io");
    write_file(dir / "blocker", "x");
    try {
        cmd_bench(Settings::defaults(Command::bench), {dir / "blocker" / "sub", false});
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("blocker") != std::string::npos);
    }
}

TEST_CASE("replay reproduces the spirograph and coverage outputs") {
    const auto dir = scratch("replay");
    const auto first = cmd_coverage(Settings::defaults(Command::coverage), {dir / "a", false});
    const auto second = replay(dir / "a" / "coverage.manifest", dir / "b");
    CHECK(read_file(dir / "a" / "coverage.csv") == read_file(dir / "b" / "coverage.csv"));
    CHECK(second.manifest.config == first.manifest.config);

    cmd_spirograph(Settings::defaults(Command::spirograph), {dir / "c", false});
    replay(dir / "c" / "spirograph.manifest", dir / "d");
    CHECK(read_file(dir / "c" / "spirograph.csv") == read_file(dir / "d" / "spirograph.csv"));
    CHECK(read_file(dir / "c" / "spirograph.svg") == read_file(dir / "d" / "spirograph.svg"));
}
