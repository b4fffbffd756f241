#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace spiroplanck::cli {

/// Whole-file read; throws IoError naming the path.
std::string read_file(const std::filesystem::path& path);

/// Binary-mode write (no newline translation); throws IoError naming the path.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace spiroplanck::cli
