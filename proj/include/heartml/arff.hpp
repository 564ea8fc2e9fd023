#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "heartml/data.hpp"

namespace heartml {

struct ArffOptions {
    /// Attribute that becomes the class; defaults to the last declared attribute.
    std::optional<std::string> target;
};

/// Parses the dense ARFF subset: `@relation`, `@attribute name {labels}|numeric|real|integer`,
/// `@data`. Keywords are case-insensitive, labels are matched case-sensitively after unquoting,
/// `?` is missing and `%` starts a comment line. Throws ParseError.
Dataset parse_arff(std::string_view text, const ArffOptions& options = {});

/// Reads only the header of an ARFF document (any data rows are ignored).
Schema parse_arff_schema(std::string_view text, const ArffOptions& options = {});

/// Emits a document that parse_arff reads back to an equal Dataset.
std::string write_arff(const Dataset& ds, std::string_view relation = "heart");
void write_arff(std::ostream& os, const Dataset& ds, std::string_view relation = "heart");

/// Shortest decimal text that parses back to exactly v.
std::string format_number(double v);

/// Parses a decimal real with optional sign and exponent; nullopt when the text is not a finite number.
std::optional<double> parse_number(std::string_view text);

}  // namespace heartml
