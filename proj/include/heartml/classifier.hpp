#pragma once

#include <cstddef>
#include <vector>

#include "heartml/data.hpp"

namespace heartml {

/// Per-class probabilities; non-negative and summing to one.
using ClassDistribution = std::vector<double>;

/// Index of the largest probability. Entries within a relative 1e-12 of the maximum count as
/// tied, and ties go to the lowest class index.
std::size_t predicted_class(const ClassDistribution& dist);

/// Throws TrainingError(SchemaMismatch) when `row` does not conform to `schema`.
void check_row(const Schema& schema, Row row);

/// Throws TrainingError(NoInstances / MissingTarget) unless `ds` is usable as training data.
void check_training_data(const Dataset& ds);

}  // namespace heartml
