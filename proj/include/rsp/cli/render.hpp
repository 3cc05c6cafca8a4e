#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/wire/types.hpp"

namespace rsp::cli {

enum class Format { Table, Csv, Json };

std::optional<Format> parse_format(std::string_view text);

/// Marker rendered in place of a null cell in table format.
inline constexpr std::string_view kNullMarker = "∅";
/// Prefix of a joined column's heading in table format.
inline constexpr std::string_view kJoinedMarker = "→";

/// `Table`: columns headed by Field titles, left-aligned, two-space gutter,
/// one line per row and no trailing blank line. `Csv`: RFC 4180 with a
/// header of Field names; null is an empty field, the empty string is `""`.
/// `Json`: the canonical wire encoding of the TableMessage.
std::string render(const TableMessage& table, Format format);

/// Headers as a table (Name, Singular, Plural, Description), CSV, or the
/// wire encoding of a ReadTableHeadersResponse.
std::string render(const std::vector<TableHeader>& headers, Format format);

/// Display width in code points.
std::size_t display_width(std::string_view utf8);

std::string csv_escape(const Cell& cell);

}  // namespace rsp::cli
