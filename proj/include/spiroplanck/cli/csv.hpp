#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace spiroplanck::cli {

using Row = std::vector<std::string>;

/// Header line plus rows, comma separated, '\n' terminated. Cells are written
/// verbatim; callers format numbers with spiroplanck::fmt.
std::string to_csv(const Row& header, const std::vector<Row>& rows,
                   const std::vector<std::string>& trailing_comments = {});

struct CsvTable {
    Row header;
    std::vector<Row> rows;
    std::vector<std::string> comments;  ///< lines starting with '#', without the marker
};

/// Splits on '\n' (tolerating "\r\n") and ','. Blank lines are skipped and
/// '#' lines collected as comments. Throws ParseError when no header exists.
CsvTable parse_csv(std::string_view text, std::string_view source);

}  // namespace spiroplanck::cli
