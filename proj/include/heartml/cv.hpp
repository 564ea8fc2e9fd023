#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "heartml/data.hpp"
#include "heartml/metrics.hpp"
#include "heartml/model.hpp"

namespace heartml {

/// Assignment of row indices to k test folds.
struct CVPlan {
    std::size_t folds = 10;
    std::uint64_t seed = 1;
    bool stratified = true;
    std::vector<std::vector<std::size_t>> fold_rows;  // each sorted ascending

    bool operator==(const CVPlan&) const = default;
};

/// Shuffles each class's rows with the seed, then deals classes (in class-index order) round-robin
/// onto the folds, continuing the deal position from one class to the next. Fold sizes differ
/// by at most one, and so do per-class counts. Throws ConfigError (TooFewInstances) when
/// n < k or k < 2, and TrainingError(MissingTarget) for unlabeled rows.
CVPlan make_cv_plan(const Dataset& ds, std::size_t folds = 10, std::uint64_t seed = 1, bool stratified = true);

/// Maps a row to a predicted class index.
using Predictor = std::function<std::size_t(Row)>;
/// Builds a predictor from training data.
using Trainer = std::function<Predictor(const Dataset&)>;

Trainer make_trainer(const ClassifierSpec& spec);

struct CVResult {
    std::vector<ConfusionMatrix> fold_matrices;
    ConfusionMatrix pooled;
    MetricsReport report;
    std::vector<std::size_t> predictions;  // per row of the input dataset
};

struct CVOptions {
    std::size_t positive_class = 1;
    int threads = 0;  // fold workers; 0: OpenMP default
};

/// Trains on k-1 folds and tests on the remaining one, for every fold. The pooled matrix is the
/// elementwise sum of the per-fold matrices. Training failures are rethrown with the fold number.
CVResult cross_validate(const Dataset& ds, const Trainer& trainer, const CVPlan& plan, const CVOptions& options = {});
CVResult cross_validate(const Dataset& ds, const ClassifierSpec& spec, const CVPlan& plan,
                        const CVOptions& options = {});

namespace reference {

/// Folds one after another on the calling thread.
CVResult cross_validate_serial(const Dataset& ds, const Trainer& trainer, const CVPlan& plan,
                               std::size_t positive_class = 1);

}  // namespace reference

}  // namespace heartml
