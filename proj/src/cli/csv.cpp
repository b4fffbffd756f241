#include "spiroplanck/cli/csv.hpp"

#include "spiroplanck/error.hpp"

namespace spiroplanck::cli {

namespace {

void append_row(std::string& out, const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += row[i];
    }
    out += '\n';
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

Row split(std::string_view line) {
    Row cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.emplace_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

}  // namespace

std::string to_csv(const Row& header, const std::vector<Row>& rows,
                   const std::vector<std::string>& trailing_comments) {
    std::string out;
    append_row(out, header);
    for (const auto& row : rows) {
        append_row(out, row);
    }
    for (const auto& c : trailing_comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    return out;
}

CsvTable parse_csv(std::string_view text, std::string_view source) {
    CsvTable table;
    bool have_header = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const auto line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            table.comments.emplace_back(trim(line.substr(1)));
            continue;
        }
        if (!have_header) {
            table.header = split(line);
            have_header = true;
        } else {
            table.rows.push_back(split(line));
        }
    }
    if (!have_header) {
        throw ParseError(std::string(source) + ": empty file (no header row)");
    }
    return table;
}

}  // namespace spiroplanck::cli
