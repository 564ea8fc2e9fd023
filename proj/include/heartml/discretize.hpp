#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "heartml/data.hpp"

namespace heartml {

/// Cut points per attribute, strictly increasing. Value v falls in bin i when
/// cuts[i-1] < v <= cuts[i]; an empty list is a single bin. Nominal attributes keep an empty entry.
struct DiscretizationMap {
    std::vector<std::vector<double>> cuts;

    std::size_t levels(const Schema& schema, std::size_t attr) const;
    /// Discrete code of a cell, or -1 when missing.
    std::int32_t code(const Schema& schema, std::size_t attr, const Value& v) const;
};

enum class BinningMethod { Mdl, EqualFrequency };

struct BinningOptions {
    BinningMethod method = BinningMethod::Mdl;
    std::size_t bins = 10;         // equal-frequency only
    bool mdl_stopping = true;      // false: accept exactly the single best cut (used in tests)
};

/// Parses "mdl" or "equal-frequency:k"; throws ConfigError.
BinningOptions parse_binning(std::string_view text);

/// Fayyad-Irani recursive entropy cuts accepted under the MDL criterion.
/// Throws ConfigError (NotNumeric) when attr is not numeric.
std::vector<double> discretize_mdl(const Dataset& ds, std::size_t attr, bool mdl_stopping = true);

/// Cut points splitting the non-missing values into k groups of near-equal size.
std::vector<double> discretize_equal_frequency(const Dataset& ds, std::size_t attr, std::size_t bins);

/// Map covering every numeric non-target attribute.
DiscretizationMap build_discretization(const Dataset& ds, const BinningOptions& options = {});

}  // namespace heartml
