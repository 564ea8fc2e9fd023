#include "heartml/cv.hpp"

#include <algorithm>
#include <exception>
#include <numeric>

#include <omp.h>

#include "heartml/errors.hpp"
#include "heartml/rng.hpp"

namespace heartml {

namespace {

// Keeps the fold shuffle independent of the forest streams derived from the same seed.
constexpr std::uint64_t kPlanStream = 0xC5F01D5ULL;

struct FoldOutcome {
    ConfusionMatrix matrix;
    std::vector<std::pair<std::size_t, std::size_t>> predictions;  // (row, class)
};

std::vector<std::size_t> training_rows(const CVPlan& plan, std::size_t fold, std::size_t n) {
    std::vector<bool> held(n, false);
    for (auto r : plan.fold_rows[fold]) held[r] = true;
    std::vector<std::size_t> rows;
    rows.reserve(n - plan.fold_rows[fold].size());
    for (std::size_t r = 0; r < n; ++r)
        if (!held[r]) rows.push_back(r);
    return rows;
}

FoldOutcome run_fold(const Dataset& ds, const Trainer& trainer, const CVPlan& plan, std::size_t fold,
                     std::size_t positive) {
    try {
        const auto train_rows = training_rows(plan, fold, ds.size());
        const auto predictor = trainer(ds.subset(train_rows));
        FoldOutcome out;
        for (auto r : plan.fold_rows[fold]) {
            const auto predicted = predictor(ds.row(r));
            out.matrix.add(ds.label(r) == positive, predicted == positive);
            out.predictions.emplace_back(r, predicted);
        }
        return out;
    } catch (const TrainingError& e) {
        throw TrainingError(e.kind(), "fold " + std::to_string(fold + 1) + ": " + e.what());
    }
}

void check_plan(const Dataset& ds, const CVPlan& plan, std::size_t positive) {
    if (positive >= ds.schema().class_count()) throw ConfigError("positive class index out of range");
    std::vector<bool> seen(ds.size(), false);
    std::size_t count = 0;
    for (const auto& f : plan.fold_rows)
        for (auto r : f) {
            if (r >= ds.size() || seen[r]) throw ConfigError("cross-validation plan does not partition the rows");
            seen[r] = true;
            ++count;
        }
    if (count != ds.size()) throw ConfigError("cross-validation plan does not cover every row");
}

CVResult assemble(const Dataset& ds, std::vector<FoldOutcome>& outcomes) {
    CVResult res;
    res.predictions.assign(ds.size(), 0);
    for (auto& o : outcomes) {
        res.fold_matrices.push_back(o.matrix);
        res.pooled += o.matrix;
        for (auto [r, c] : o.predictions) res.predictions[r] = c;
    }
    res.report = MetricsReport::from(res.pooled);
    return res;
}

}  // namespace

CVPlan make_cv_plan(const Dataset& ds, std::size_t folds, std::uint64_t seed, bool stratified) {
    const auto n = ds.size();
    if (folds < 2) throw ConfigError("TooFewInstances: at least 2 folds are required");
    if (n < folds)
        throw ConfigError("TooFewInstances: " + std::to_string(n) + " instances cannot fill " + std::to_string(folds) +
                          " folds");
    check_training_data(ds);

    CVPlan plan;
    plan.folds = folds;
    plan.seed = seed;
    plan.stratified = stratified;
    plan.fold_rows.assign(folds, {});

    std::vector<std::vector<std::size_t>> groups;
    if (stratified) {
        groups.assign(ds.schema().class_count(), {});
        for (std::size_t r = 0; r < n; ++r) groups[ds.label(r)].push_back(r);
    } else {
        groups.emplace_back(n);
        std::iota(groups[0].begin(), groups[0].end(), 0);
    }
    Rng rng(derive_seed(seed, kPlanStream));
    std::size_t deal = 0;
    for (auto& g : groups) {
        rng.shuffle(std::span(g));
        for (auto r : g) plan.fold_rows[deal++ % folds].push_back(r);
    }
    for (auto& f : plan.fold_rows) std::sort(f.begin(), f.end());
    return plan;
}

Trainer make_trainer(const ClassifierSpec& spec) {
    return [spec](const Dataset& train_ds) -> Predictor {
        auto model = std::make_shared<Model>(train(spec, train_ds));
        return [model](Row row) { return model->predict_class(row); };
    };
}

CVResult cross_validate(const Dataset& ds, const Trainer& trainer, const CVPlan& plan, const CVOptions& options) {
    check_plan(ds, plan, options.positive_class);
    std::vector<FoldOutcome> outcomes(plan.fold_rows.size());
    std::vector<std::exception_ptr> errors(plan.fold_rows.size());
    const auto count = static_cast<std::ptrdiff_t>(plan.fold_rows.size());
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t f = 0; f < count; ++f) {
        try {
            outcomes[f] = run_fold(ds, trainer, plan, static_cast<std::size_t>(f), options.positive_class);
        } catch (...) {
            errors[f] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return assemble(ds, outcomes);
}

CVResult cross_validate(const Dataset& ds, const ClassifierSpec& spec, const CVPlan& plan, const CVOptions& options) {
    return cross_validate(ds, make_trainer(spec), plan, options);
}

namespace reference {

CVResult cross_validate_serial(const Dataset& ds, const Trainer& trainer, const CVPlan& plan,
                               std::size_t positive_class) {
    check_plan(ds, plan, positive_class);
    std::vector<FoldOutcome> outcomes;
    for (std::size_t f = 0; f < plan.fold_rows.size(); ++f)
        outcomes.push_back(run_fold(ds, trainer, plan, f, positive_class));
    return assemble(ds, outcomes);
}

}  // namespace reference

}  // namespace heartml
