#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "heartml/data.hpp"

namespace heartml {

/// Reads comma-separated text with a mandatory header row. Columns are matched to `schema`
/// by name (any order) and reordered into schema order; extra columns are ignored.
/// Cells may be double-quoted (`""` escapes a quote); an empty or `?` cell is missing.
/// Throws ParseError (MissingColumn, ArityMismatch, UnknownCategory, NonNumericCell).
Dataset parse_csv(std::string_view text, const Schema& schema);

/// Splits one CSV record into cells.
std::vector<std::string> split_csv_record(std::string_view line);

}  // namespace heartml
