#pragma once

#include <span>
#include <string>
#include <vector>

#include "heartml/data.hpp"

namespace heartml {

/// Recodes every non-target nominal attribute as numeric (category index as a real).
/// Row count, attribute order and the target column are unchanged.
Dataset nominal_to_numeric_view(const Dataset& ds);

/// Keeps the listed feature columns (in schema order) plus the target.
Dataset project(const Dataset& ds, std::span<const std::size_t> features);

/// Resolves attribute names to indices; throws ConfigError for unknown names or the target.
std::vector<std::size_t> resolve_features(const Schema& schema, std::span<const std::string> names);

}  // namespace heartml
