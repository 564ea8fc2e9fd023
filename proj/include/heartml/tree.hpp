#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "heartml/classifier.hpp"
#include "heartml/data.hpp"

namespace heartml {

class Rng;

struct TreeParams {
    std::size_t min_leaf = 2;     // smallest admissible branch
    double confidence = 0.25;     // pruning confidence factor
    bool prune = true;
    bool allow_zero_gain_splits = false;
};

/// Univariate classification tree. Numeric tests are binary (value <= threshold goes to
/// branch 0); nominal tests branch once per category. Nodes live in a flat array, root first.
class DecisionTree {
public:
    struct Node {
        std::int32_t attribute = -1;         // -1 for a leaf
        bool numeric = false;
        double threshold = 0.0;
        std::vector<std::uint32_t> children;
        std::uint32_t majority_branch = 0;   // where missing values are routed
        std::vector<std::uint32_t> counts;   // class counts that define the node's distribution
        std::uint32_t size = 0;              // training instances that reached the node

        bool is_leaf() const noexcept { return attribute < 0; }
        bool operator==(const Node&) const = default;
    };

    DecisionTree() = default;
    DecisionTree(Schema schema, std::vector<Node> nodes) : schema_(std::move(schema)), nodes_(std::move(nodes)) {}

    const Schema& schema() const noexcept { return schema_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const Node& root() const { return nodes_.front(); }

    /// Index of the leaf the row is routed to.
    std::size_t leaf_for(Row row) const;
    /// Count-normalized distribution of that leaf. Throws TrainingError(SchemaMismatch).
    ClassDistribution predict(Row row) const;

    std::size_t leaf_count() const;
    std::size_t depth() const;
    /// Sum of leaf pessimistic error estimates at the given confidence.
    double pessimistic_error(double confidence) const;

    bool operator==(const DecisionTree&) const = default;

private:
    Schema schema_;
    std::vector<Node> nodes_;
};

/// Gain and gain ratio of the best test on one attribute at a node, as used for split selection.
struct SplitCandidate {
    std::size_t attribute = 0;
    bool numeric = false;
    double threshold = 0.0;
    double gain = 0.0;
    double gain_ratio = 0.0;
};

/// One candidate per listed attribute that admits a test over `rows` (a nominal test needs two
/// branches with at least `min_leaf` rows, a numeric one at least `min_leaf` rows on each side).
std::vector<SplitCandidate> evaluate_splits(const Dataset& ds, std::span<const std::size_t> rows,
                                            std::span<const std::size_t> attributes, std::size_t min_leaf);

/// Top-down induction on the given rows (duplicates allowed, as in a bootstrap sample).
/// When `feature_rng` is set and `features_per_split` is below the feature count, each node
/// considers a fresh uniform sample of that many features.
DecisionTree grow_tree(const Dataset& ds, std::span<const std::size_t> rows, const TreeParams& params,
                       Rng* feature_rng = nullptr, std::size_t features_per_split = 0);

/// Error-based pruning: a subtree becomes a leaf when the leaf's pessimistic error does not
/// exceed the sum over the subtree's leaves.
DecisionTree prune_tree(const DecisionTree& tree, double confidence);

/// grow_tree over every row, then prune_tree when params.prune. Throws TrainingError(NoInstances).
DecisionTree train_tree(const Dataset& ds, const TreeParams& params = {});

}  // namespace heartml
