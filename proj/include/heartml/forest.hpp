#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "heartml/classifier.hpp"
#include "heartml/tree.hpp"

namespace heartml {

struct ForestParams {
    std::size_t trees = 100;
    std::optional<std::size_t> features_per_split;  // default: floor(log2(M)) + 1
    std::uint64_t seed = 1;
    bool bootstrap = true;  // false draws every row once (test hook)
};

/// floor(log2(M)) + 1 for M >= 1 features.
std::size_t default_features_per_split(std::size_t feature_count);

/// Bagged unpruned trees voting by majority.
struct RandomForestModel {
    Schema schema;
    std::vector<DecisionTree> trees;
    std::vector<std::uint64_t> tree_seeds;
    std::size_t features_per_split = 1;
    bool bootstrap = true;

    /// Share of tree votes per class.
    ClassDistribution predict(Row row) const;
    /// Per-class vote counts.
    std::vector<std::size_t> votes(Row row) const;

    bool operator==(const RandomForestModel&) const = default;
};

/// Trains the trees with up to `threads` OpenMP workers (0: runtime default). Tree t draws its
/// bootstrap sample and feature subsets from a stream seeded by derive_seed(seed, t), so the
/// forest is identical for every thread count.
RandomForestModel train_forest(const Dataset& ds, const ForestParams& params = {}, int threads = 0);

namespace reference {

/// One tree after another on the calling thread.
RandomForestModel train_forest_serial(const Dataset& ds, const ForestParams& params = {});

}  // namespace reference

}  // namespace heartml
