#include "spiroplanck/cli/reference.hpp"

#include <array>

#include "spiroplanck/cli/csv.hpp"
#include "spiroplanck/error.hpp"
#include "spiroplanck/format.hpp"

namespace spiroplanck::cli {

namespace {

constexpr std::array<std::string_view, 4> kColumns = {"nodes", "pt_mpt_sim", "pt_mpt_emu",
                                                      "spiroplanck"};

}  // namespace

const std::vector<ReferenceRow>& bundled_reference() {
    static const std::vector<ReferenceRow> rows = {
        {10, 41, 19, 9},
        {15, 115, 63, 13},
        {20, 250, 109, 18},
        {25, 432, 204, 25},
        {30, 712, 458, 45},
    };
    return rows;
}

std::vector<ReferenceRow> parse_reference(std::string_view text, std::string_view source) {
    const auto table = parse_csv(text, source);
    const std::string where(source);
    if (table.header.size() != kColumns.size()) {
        throw ParseError(where + ": header has " + std::to_string(table.header.size()) +
                         " columns, expected " + std::string(kReferenceHeader));
    }
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
        if (table.header[c] != kColumns[c]) {
            throw ParseError(where + ": header column " + std::to_string(c + 1) + " is '" +
                             table.header[c] + "', expected '" + std::string(kColumns[c]) + "'");
        }
    }
    if (table.rows.empty()) {
        throw ParseError(where + ": no data rows");
    }

    std::vector<ReferenceRow> rows;
    rows.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& cells = table.rows[r];
        const std::string row_label = where + ": row " + std::to_string(r + 1);
        if (cells.size() != kColumns.size()) {
            throw ParseError(row_label + " has " + std::to_string(cells.size()) +
                             " cells, expected " + std::to_string(kColumns.size()));
        }
        std::array<std::int64_t, 4> v{};
        for (std::size_t c = 0; c < kColumns.size(); ++c) {
            const std::string label = row_label + ", column " + std::string(kColumns[c]);
            v[c] = fmt::parse_int(cells[c], label);
            if (v[c] < 0) {
                throw ParseError(label + ": value must be nonnegative");
            }
        }
        if (!rows.empty() && v[0] <= rows.back().nodes) {
            throw ParseError(row_label + ", column nodes: node counts must strictly increase");
        }
        rows.push_back({v[0], v[1], v[2], v[3]});
    }
    return rows;
}

std::string reference_to_csv(const std::vector<ReferenceRow>& rows) {
    std::vector<Row> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back({fmt::integer(r.nodes), fmt::integer(r.pt_mpt_simulation),
                       fmt::integer(r.pt_mpt_emulation), fmt::integer(r.spiroplanck)});
    }
    return to_csv(Row(kColumns.begin(), kColumns.end()), out);
}

}  // namespace spiroplanck::cli
