#include "heartml/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "heartml/errors.hpp"

namespace heartml {

std::size_t predicted_class(const ClassDistribution& dist) {
    if (dist.empty()) return 0;
    const double top = *std::max_element(dist.begin(), dist.end());
    const double tol = 1e-12 * std::max(1.0, std::abs(top));
    for (std::size_t c = 0; c < dist.size(); ++c)
        if (dist[c] >= top - tol) return c;
    return 0;
}

void check_row(const Schema& schema, Row row) {
    using K = TrainingError::Kind;
    if (row.size() != schema.size())
        throw TrainingError(K::SchemaMismatch, "row has " + std::to_string(row.size()) + " values, model expects " +
                                                   std::to_string(schema.size()));
    for (std::size_t a = 0; a < row.size(); ++a) {
        if (a == schema.target_index()) continue;
        if (!compatible(schema[a], row[a]))
            throw TrainingError(K::SchemaMismatch, "value of '" + schema[a].name + "' does not match the model schema");
    }
}

void check_training_data(const Dataset& ds) {
    using K = TrainingError::Kind;
    if (ds.empty()) throw TrainingError(K::NoInstances, "training data has no instances");
    const auto t = ds.schema().target_index();
    for (std::size_t r = 0; r < ds.size(); ++r)
        if (ds.at(r, t).is_missing())
            throw TrainingError(K::MissingTarget, "training row " + std::to_string(r + 1) + " has no class label");
}

}  // namespace heartml
