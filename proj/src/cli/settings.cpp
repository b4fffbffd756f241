#include "spiroplanck/cli/settings.hpp"

#include <algorithm>
#include <toml.hpp>

#include "spiroplanck/cli/io.hpp"
#include "spiroplanck/error.hpp"
#include "spiroplanck/format.hpp"

namespace spiroplanck::cli {

namespace {

std::string_view section_of(std::string_view key) { return key.substr(0, key.find('.')); }

const SettingSpec* find_spec(std::string_view key) {
    const auto& specs = setting_specs();
    const auto it = std::find_if(specs.begin(), specs.end(),
                                 [&](const SettingSpec& s) { return s.key == key; });
    return it == specs.end() ? nullptr : &*it;
}

std::string toml_scalar(const toml::node& node, const std::string& key) {
    if (const auto* v = node.as_integer()) {
        return fmt::integer(v->get());
    }
    if (const auto* v = node.as_floating_point()) {
        return fmt::shortest(v->get());
    }
    if (const auto* v = node.as_string()) {
        return v->get();
    }
    if (const auto* v = node.as_boolean()) {
        return v->get() ? "true" : "false";
    }
    throw ConfigError("config key '" + key + "': unsupported value type");
}

}  // namespace

std::string_view to_string(Command command) {
    switch (command) {
        case Command::spirograph:
            return "spirograph";
        case Command::plan:
            return "plan";
        case Command::planck:
            return "planck";
        case Command::coverage:
            return "coverage";
        case Command::montecarlo:
            return "montecarlo";
        case Command::bench:
            return "bench";
    }
    return "spirograph";
}

Command parse_command(std::string_view name) {
    for (auto c : {Command::spirograph, Command::plan, Command::planck, Command::coverage,
                   Command::montecarlo, Command::bench}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

const std::vector<SettingSpec>& setting_specs() {
    static const std::vector<SettingSpec> specs = {
        {"field.side_length", "100", "side of the square field, meters"},
        {"field.range", "7", "node sensing range, meters"},

        {"curve.r1", "180", "fixed circle radius"},
        {"curve.r2", "40", "rolling circle radius (nonzero)"},
        {"curve.a", "15", "pen offset"},
        {"curve.t_step", "0.01", "parameter step, radians"},
        {"curve.t_max", "auto", "parameter upper bound, radians (auto: one closure)"},
        {"curve.quantum", "1e-06", "deduplication grid quantum"},

        {"planner.threshold", "0.1", "stop once (1 - e^-lambda)^N reaches this"},
        {"planner.temperature", "6000", "radiance diagnostic temperature, kelvin"},
        {"planner.wavelength_scale", "1e-06", "meters of wavelength per unit density"},
        {"planner.constants", "prose", "physical constant set: prose or listing"},
        {"planner.max_iterations", "auto", "loop cap (auto: 10 x curve length)"},
        {"planner.select", "sequential", "SELECT policy: sequential or random"},
        {"planner.seed", "0", "seed for the random SELECT policy"},

        {"planck.temperatures", "4500,6000,7500", "comma separated temperatures, kelvin"},
        {"planck.lambda_min", "1e-09", "first grid wavelength, meters"},
        {"planck.lambda_step", "1e-08", "grid step, meters"},
        {"planck.lambda_max", "3e-06", "last grid wavelength bound, meters"},
        {"planck.form", "radiance", "radiance or energy-density"},
        {"planck.constants", "prose", "physical constant set: prose or listing"},

        {"coverage.n_nodes", "100", "deployed node count N"},

        {"montecarlo.n_nodes", "321", "deployed node count N"},
        {"montecarlo.trials", "10000", "independent deployments"},
        {"montecarlo.seed", "20121001", "master seed"},
        {"montecarlo.topology", "torus", "torus or bounded"},
        {"montecarlo.threads", "1", "worker threads (results are thread-count independent)"},

        {"bench.reference", "bundled", "reference CSV path, or 'bundled'"},
    };
    return specs;
}

std::vector<std::string_view> sections_for(Command command) {
    switch (command) {
        case Command::spirograph:
            return {"curve"};
        case Command::plan:
            return {"field", "curve", "planner"};
        case Command::planck:
            return {"planck"};
        case Command::coverage:
            return {"field", "coverage"};
        case Command::montecarlo:
            return {"field", "montecarlo"};
        case Command::bench:
            return {"bench"};
    }
    return {};
}

std::string flag_name(std::string_view key) {
    std::string name(key.substr(key.find('.') + 1));
    std::replace(name.begin(), name.end(), '_', '-');
    return name;
}

Settings::Settings(std::vector<std::string_view> sections) : sections_(std::move(sections)) {}

Settings Settings::defaults(Command command) {
    Settings s(sections_for(command));
    for (const auto& spec : setting_specs()) {
        if (std::find(s.sections_.begin(), s.sections_.end(), section_of(spec.key)) !=
            s.sections_.end()) {
            s.values_.emplace(std::string(spec.key), std::string(spec.default_value));
        }
    }
    return s;
}

void Settings::set(std::string_view key, std::string value) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError("config key '" + std::string(key) + "' is not used by this command");
    }
    it->second = std::move(value);
}

bool Settings::contains(std::string_view key) const { return values_.find(key) != values_.end(); }

const std::string& Settings::text(std::string_view key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError("config key '" + std::string(key) + "' is not set");
    }
    return it->second;
}

double Settings::number(std::string_view key) const {
    try {
        return fmt::parse_double(text(key), "config key '" + std::string(key) + "'");
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
}

std::int64_t Settings::integer(std::string_view key) const {
    try {
        return fmt::parse_int(text(key), "config key '" + std::string(key) + "'");
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
}

std::uint64_t Settings::unsigned_integer(std::string_view key) const {
    try {
        return fmt::parse_uint(text(key), "config key '" + std::string(key) + "'");
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
}

std::vector<double> Settings::number_list(std::string_view key) const {
    const std::string& raw = text(key);
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= raw.size()) {
        const auto comma = raw.find(',', start);
        const auto item = std::string_view(raw).substr(start, comma - start);
        try {
            out.push_back(fmt::parse_double(item, "config key '" + std::string(key) + "'"));
        } catch (const ParseError& e) {
            throw ConfigError(e.what());
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

void Settings::merge_toml(std::string_view document, std::string_view source) {
    toml::table root;
    try {
        root = toml::parse(document, source);
    } catch (const toml::parse_error& e) {
        const auto& where = e.source().begin;
        throw ConfigError(std::string(source) + ":" + std::to_string(where.line) + ":" +
                          std::to_string(where.column) + ": " + std::string(e.description()));
    }
    for (const auto& [section_key, section_node] : root) {
        const std::string section(section_key.str());
        const auto* table = section_node.as_table();
        if (table == nullptr) {
            throw ConfigError(std::string(source) + ": top-level key '" + section +
                              "' must be a [section]");
        }
        for (const auto& [name, node] : *table) {
            const std::string key = section + "." + std::string(name.str());
            if (find_spec(key) == nullptr) {
                throw ConfigError(std::string(source) + ": unknown config key '" + key + "'");
            }
            std::string value;
            if (const auto* arr = node.as_array()) {
                for (std::size_t i = 0; i < arr->size(); ++i) {
                    if (i > 0) {
                        value += ',';
                    }
                    value += toml_scalar(*arr->get(i), key);
                }
            } else {
                value = toml_scalar(node, key);
            }
            if (contains(key)) {
                values_[key] = std::move(value);
            }
        }
    }
}

void Settings::merge_toml_file(const std::filesystem::path& path) {
    merge_toml(read_file(path), path.string());
}

std::string manifest_to_text(const RunManifest& manifest) {
    std::string out;
    out += "command=" + std::string(to_string(manifest.command)) + "\n";
    out += "tool_version=" + manifest.tool_version + "\n";
    out += "seed=" + manifest.seed + "\n";
    for (const auto& [k, v] : manifest.config) {
        out += "config." + k + "=" + v + "\n";
    }
    out += "output_dir=" + manifest.output_dir + "\n";
    for (std::size_t i = 0; i < manifest.artifacts.size(); ++i) {
        out += "artifact." + std::to_string(i) + "=" + manifest.artifacts[i] + "\n";
    }
    return out;
}

RunManifest parse_manifest(std::string_view text, std::string_view source) {
    RunManifest m;
    bool have_command = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw ParseError(std::string(source) + ":" + std::to_string(line_no) +
                             ": expected key=value");
        }
        const auto key = line.substr(0, eq);
        std::string value(line.substr(eq + 1));
        if (key == "command") {
            m.command = parse_command(value);
            have_command = true;
        } else if (key == "tool_version") {
            m.tool_version = value;
        } else if (key == "seed") {
            m.seed = value;
        } else if (key == "output_dir") {
            m.output_dir = value;
        } else if (key.starts_with("config.")) {
            m.config[std::string(key.substr(7))] = value;
        } else if (key.starts_with("artifact.")) {
            m.artifacts.push_back(value);
        } else {
            throw ParseError(std::string(source) + ":" + std::to_string(line_no) +
                             ": unknown manifest key '" + std::string(key) + "'");
        }
    }
    if (!have_command) {
        throw ParseError(std::string(source) + ": manifest has no command line");
    }
    return m;
}

Settings settings_from_manifest(const RunManifest& manifest) {
    Settings s = Settings::defaults(manifest.command);
    for (const auto& [k, v] : manifest.config) {
        s.set(k, v);
    }
    return s;
}

}  // namespace spiroplanck::cli
