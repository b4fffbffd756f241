#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace spiroplanck::cli {

enum class Command { spirograph, plan, planck, coverage, montecarlo, bench };

std::string_view to_string(Command command);
/// Throws ConfigError for an unknown name.
Command parse_command(std::string_view name);

/// A configuration key "section.name" with its built-in default.
struct SettingSpec {
    std::string_view key;
    std::string_view default_value;
    std::string_view help;
};

/// Every key understood by any command, grouped by section.
const std::vector<SettingSpec>& setting_specs();

/// Config sections a command reads.
std::vector<std::string_view> sections_for(Command command);

/// "field.side_length" -> "side-length", the command-line flag name.
std::string flag_name(std::string_view key);

/// Flat key -> text map with precedence defaults < TOML < flags. Values stay
/// text until a command converts them, so a manifest can record exactly
/// what was resolved.
class Settings {
public:
    /// Built-in defaults for the sections the command reads.
    static Settings defaults(Command command);

    /// Throws ConfigError for a key outside this command's sections.
    void set(std::string_view key, std::string value);
    bool contains(std::string_view key) const;

    const std::string& text(std::string_view key) const;
    double number(std::string_view key) const;
    std::int64_t integer(std::string_view key) const;
    std::uint64_t unsigned_integer(std::string_view key) const;
    std::vector<double> number_list(std::string_view key) const;

    /// Applies a TOML document. Keys of sections this command does not read
    /// are ignored; unknown keys are errors.
    void merge_toml(std::string_view document, std::string_view source);
    void merge_toml_file(const std::filesystem::path& path);

    const std::map<std::string, std::string, std::less<>>& entries() const { return values_; }

private:
    explicit Settings(std::vector<std::string_view> sections);

    std::vector<std::string_view> sections_;
    std::map<std::string, std::string, std::less<>> values_;
};

inline constexpr std::string_view kToolVersion = "spiroplanck 1.0.0";

/// Flat key=value record written next to every command's outputs.
struct RunManifest {
    Command command = Command::spirograph;
    std::map<std::string, std::string, std::less<>> config;
    std::string seed = "none";
    std::string output_dir;
    std::vector<std::string> artifacts;  ///< file names relative to output_dir
    std::string tool_version = std::string(kToolVersion);
};

std::string manifest_to_text(const RunManifest& manifest);
/// Throws ParseError for malformed lines or a missing command.
RunManifest parse_manifest(std::string_view text, std::string_view source);

/// Settings for manifest.command populated from manifest.config.
Settings settings_from_manifest(const RunManifest& manifest);

}  // namespace spiroplanck::cli
