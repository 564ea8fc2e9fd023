#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heartml/data.hpp"

namespace heartml {

struct GaussianParams {
    double mean = 0.0;
    double stddev = 0.0;
};

/// Class-conditional generator for one attribute. Exactly one of the two per-class tables is used,
/// depending on the attribute kind.
struct AttributeDistribution {
    std::vector<std::vector<double>> category_probs;  // [class][category]
    std::vector<GaussianParams> gaussian;              // [class]
    std::optional<int> decimals;                       // numeric rounding
    std::optional<double> min;
    std::optional<double> max;
    double missing_rate = 0.0;
};

struct SyntheticSpec {
    std::vector<double> class_prior;  // indexed by target category
    std::map<std::string, AttributeDistribution, std::less<>> attributes;
};

/// Reads the JSON synthetic-spec document (see docs/synthetic-spec.md).
SyntheticSpec parse_synthetic_spec(std::string_view json_text, const Schema& schema);

/// Class counts for n rows: floor(n * prior) plus largest-remainder distribution of the rest
/// (ties to the lower class index).
std::vector<std::size_t> largest_remainder_counts(std::size_t n, const std::vector<double>& prior);

/// Deterministic synthetic table. Throws ConfigError on an invalid spec
/// (probabilities not summing to 1 within 1e-9, negative stddev, missing attributes).
Dataset generate_synthetic(const Schema& schema, std::size_t n, std::uint64_t seed, const SyntheticSpec& spec);

}  // namespace heartml
