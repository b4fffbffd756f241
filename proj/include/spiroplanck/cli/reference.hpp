#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spiroplanck::cli {

/// One row of the OSPF overhead reference table (Pt-to-Mpt simulation and
/// emulation versus the coverage heuristic). Reference data only.
struct ReferenceRow {
    std::int64_t nodes = 0;
    std::int64_t pt_mpt_simulation = 0;
    std::int64_t pt_mpt_emulation = 0;
    std::int64_t spiroplanck = 0;

    bool operator==(const ReferenceRow&) const = default;
};

inline constexpr std::string_view kReferenceHeader = "nodes,pt_mpt_sim,pt_mpt_emu,spiroplanck";

/// The five published rows, 10 to 30 nodes.
const std::vector<ReferenceRow>& bundled_reference();

/// Parses the four-column schema. Throws ParseError naming the row and
/// column on a header mismatch, a non-integer or negative cell, nodes that
/// do not strictly increase, or a file without data rows.
std::vector<ReferenceRow> parse_reference(std::string_view text, std::string_view source);

std::string reference_to_csv(const std::vector<ReferenceRow>& rows);

}  // namespace spiroplanck::cli
