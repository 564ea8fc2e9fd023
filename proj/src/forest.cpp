#include "heartml/forest.hpp"

#include <bit>
#include <exception>
#include <numeric>

#include <omp.h>

#include "heartml/errors.hpp"
#include "heartml/rng.hpp"

namespace heartml {

namespace {

struct Plan {
    std::size_t k;
    TreeParams tree;
};

Plan plan_forest(const Dataset& ds, const ForestParams& params) {
    check_training_data(ds);
    const auto m = ds.schema().feature_count();
    if (params.trees < 1) throw ConfigError("a forest needs at least one tree");
    if (m < 1) throw ConfigError("a forest needs at least one feature");
    const auto k = params.features_per_split.value_or(default_features_per_split(m));
    if (k < 1 || k > m)
        throw ConfigError("features per split must lie in [1, " + std::to_string(m) + "], got " + std::to_string(k));
    return {k, TreeParams{.min_leaf = 1, .confidence = 0.25, .prune = false, .allow_zero_gain_splits = false}};
}

DecisionTree train_member(const Dataset& ds, const ForestParams& params, const Plan& plan, std::uint64_t tree_seed) {
    Rng rng(tree_seed);
    std::vector<std::size_t> rows(ds.size());
    if (params.bootstrap) {
        for (auto& r : rows) r = static_cast<std::size_t>(rng.below(ds.size()));
    } else {
        std::iota(rows.begin(), rows.end(), 0);
    }
    return grow_tree(ds, rows, plan.tree, &rng, plan.k);
}

RandomForestModel empty_model(const Dataset& ds, const ForestParams& params, const Plan& plan) {
    RandomForestModel m;
    m.schema = ds.schema();
    m.features_per_split = plan.k;
    m.bootstrap = params.bootstrap;
    m.trees.resize(params.trees);
    m.tree_seeds.resize(params.trees);
    for (std::size_t t = 0; t < params.trees; ++t) m.tree_seeds[t] = derive_seed(params.seed, t);
    return m;
}

}  // namespace

std::size_t default_features_per_split(std::size_t feature_count) {
    if (feature_count == 0) return 1;
    return static_cast<std::size_t>(std::bit_width(feature_count));  // floor(log2 M) + 1
}

RandomForestModel train_forest(const Dataset& ds, const ForestParams& params, int threads) {
    const auto plan = plan_forest(ds, params);
    auto m = empty_model(ds, params, plan);
    std::vector<std::exception_ptr> errors(params.trees);
    const auto count = static_cast<std::ptrdiff_t>(params.trees);
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (std::ptrdiff_t t = 0; t < count; ++t) {
        try {
            m.trees[t] = train_member(ds, params, plan, m.tree_seeds[t]);
        } catch (...) {
            errors[t] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return m;
}

std::vector<std::size_t> RandomForestModel::votes(Row row) const {
    check_row(schema, row);
    std::vector<std::size_t> v(schema.class_count(), 0);
    for (const auto& t : trees) ++v[predicted_class(t.predict(row))];
    return v;
}

ClassDistribution RandomForestModel::predict(Row row) const {
    const auto v = votes(row);
    ClassDistribution dist(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) dist[c] = static_cast<double>(v[c]) / static_cast<double>(trees.size());
    return dist;
}

namespace reference {

RandomForestModel train_forest_serial(const Dataset& ds, const ForestParams& params) {
    const auto plan = plan_forest(ds, params);
    auto m = empty_model(ds, params, plan);
    for (std::size_t t = 0; t < params.trees; ++t) m.trees[t] = train_member(ds, params, plan, m.tree_seeds[t]);
    return m;
}

}  // namespace reference

}  // namespace heartml
