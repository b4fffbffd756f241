// spiroplanck: coverage planning, radiance and validation front end.
//
//   spiroplanck spirograph [--r1 180 --r2 40 --a 15 ...]
//   spiroplanck plan --config plan.toml --out-dir out/ [--strict]
//   spiroplanck planck --temperatures 4500,6000,7500
//   spiroplanck coverage --n-nodes 100
//   spiroplanck montecarlo --n-nodes 321 --trials 10000 --seed 7
//   spiroplanck bench [--reference data/table1_ospf_overhead.csv]
//   spiroplanck replay out/plan.manifest --out-dir again/

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "spiroplanck/cli/commands.hpp"
#include "spiroplanck/cli/settings.hpp"
#include "spiroplanck/error.hpp"

namespace cli = spiroplanck::cli;

namespace {

struct SubcommandArgs {
    cli::Command command;
    std::string config_path;
    std::string out_dir = ".";
    bool strict = false;
    std::map<std::string, std::string> flags;
};

void add_setting_flags(CLI::App& sub, SubcommandArgs& args) {
    const auto sections = cli::sections_for(args.command);
    for (const auto& spec : cli::setting_specs()) {
        const auto section = spec.key.substr(0, spec.key.find('.'));
        if (std::find(sections.begin(), sections.end(), section) == sections.end()) {
            continue;
        }
        const std::string key(spec.key);
        auto* opt = sub.add_option_function<std::string>(
            "--" + cli::flag_name(spec.key),
            [&args, key](const std::string& value) { args.flags[key] = value; },
            std::string(spec.help) + " [" + key + ", default " + std::string(spec.default_value) +
                "]");
        opt->type_name("VALUE");
    }
}

int report(const cli::CommandResult& result) {
    for (const auto& line : result.summary) {
        std::cout << line << (line.ends_with('\n') ? "" : "\n");
    }
    for (const auto& w : result.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    for (const auto& path : result.artifacts) {
        std::cout << "wrote " << path.string() << "\n";
    }
    return result.exit_code;
}

int run_subcommand(const SubcommandArgs& args) {
    auto settings = cli::Settings::defaults(args.command);
    if (!args.config_path.empty()) {
        settings.merge_toml_file(args.config_path);
    }
    for (const auto& [key, value] : args.flags) {
        settings.set(key, value);
    }
    cli::RunOptions options;
    options.out_dir = args.out_dir;
    options.strict = args.strict;
    return report(cli::execute(args.command, std::move(settings), options));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage planning along a spirograph curve, with radiance diagnostics, "
                 "coverage distributions and a Monte Carlo isolation oracle."};
    app.set_version_flag("--version", std::string(cli::kToolVersion));
    app.require_subcommand(1);

    std::vector<std::unique_ptr<SubcommandArgs>> all_args;
    std::map<CLI::App*, SubcommandArgs*> lookup;
    const std::map<cli::Command, std::string> descriptions = {
        {cli::Command::spirograph, "Sample the curve; writes spirograph.csv and .svg"},
        {cli::Command::plan, "Run the placement heuristic; writes placement/trace CSV and SVG"},
        {cli::Command::planck, "Spectral curves per temperature; writes planck.csv and .svg"},
        {cli::Command::coverage, "Binomial vs Poisson covering-node distribution"},
        {cli::Command::montecarlo, "Seeded random deployments vs the isolation formula"},
        {cli::Command::bench, "Echo and plot the OSPF overhead reference table"},
    };
    for (const auto& [command, description] : descriptions) {
        auto args = std::make_unique<SubcommandArgs>();
        args->command = command;
        auto* sub = app.add_subcommand(std::string(cli::to_string(command)), description);
        sub->add_option("--config", args->config_path, "TOML configuration file");
        sub->add_option("--out-dir", args->out_dir, "output directory")->capture_default_str();
        if (command == cli::Command::plan) {
            sub->add_flag("--strict", args->strict, "exit with code 3 unless the planner converges");
        }
        add_setting_flags(*sub, *args);
        lookup[sub] = args.get();
        all_args.push_back(std::move(args));
    }

    std::string manifest_path;
    std::string replay_out;
    bool replay_strict = false;
    auto* replay = app.add_subcommand("replay", "Re-run a command from its manifest");
    replay->add_option("manifest", manifest_path, "manifest written by a previous run")->required();
    replay->add_option("--out-dir", replay_out, "output directory (default: the manifest's)");
    replay->add_flag("--strict", replay_strict, "exit with code 3 unless a planner run converges");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitUsage;
    }

    try {
        if (replay->parsed()) {
            std::optional<std::filesystem::path> out;
            if (!replay_out.empty()) {
                out = replay_out;
            }
            return report(cli::replay(manifest_path, out, replay_strict));
        }
        for (const auto& [sub, args] : lookup) {
            if (sub->parsed()) {
                return run_subcommand(*args);
            }
        }
    } catch (const spiroplanck::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitIo;
    } catch (const spiroplanck::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitUsage;
    }
    return cli::kExitUsage;
}
