#include "spiroplanck/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

#include "spiroplanck/error.hpp"

namespace spiroplanck::fmt {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
T parse_whole(std::string_view text, std::string_view what, const char* kind) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    T value{};
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError(std::string(what) + ": expected " + kind + ", got '" + std::string(text) +
                         "'");
    }
    return value;
}

}  // namespace

std::string shortest(double value) {
    if (value == 0.0) {
        return "0";  // folds -0 as well
    }
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string significant(double value, int digits) {
    if (value == 0.0) {
        return "0";
    }
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                         std::chars_format::general, digits);
    return std::string(buf.data(), ptr);
}

std::string integer(std::int64_t value) { return std::to_string(value); }

double parse_double(std::string_view text, std::string_view what) {
    const double v = parse_whole<double>(text, what, "a number");
    if (!std::isfinite(v)) {
        throw ParseError(std::string(what) + ": value must be finite");
    }
    return v;
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
    return parse_whole<std::int64_t>(text, what, "an integer");
}

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
    return parse_whole<std::uint64_t>(text, what, "a non-negative integer");
}

}  // namespace spiroplanck::fmt
