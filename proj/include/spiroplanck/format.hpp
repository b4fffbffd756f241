#pragma once

#include <cstdint>
#include <string>
#include <string_view>

// Locale-independent number <-> text conversions used by every emitter.
namespace spiroplanck::fmt {

/// Shortest text that parses back to exactly `value`.
std::string shortest(double value);

/// `digits` significant digits, %g style.
std::string significant(double value, int digits);

std::string integer(std::int64_t value);

/// Whole-string parses; std::nullopt-like failure is reported by throwing
/// ParseError carrying `what` in the message.
double parse_double(std::string_view text, std::string_view what);
std::int64_t parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_uint(std::string_view text, std::string_view what);

}  // namespace spiroplanck::fmt
