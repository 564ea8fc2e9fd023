#include "heartml/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "heartml/errors.hpp"
#include "heartml/info.hpp"
#include "heartml/rng.hpp"
#include "heartml/stats.hpp"

namespace heartml {

namespace {

constexpr double kGainEps = 1e-12;

double midpoint(double lo, double hi) {
    const double m = lo + (hi - lo) / 2.0;
    return m < hi ? m : lo;
}

std::vector<std::uint32_t> class_counts(const Dataset& ds, std::span<const std::size_t> rows) {
    std::vector<std::uint32_t> counts(ds.schema().class_count(), 0);
    for (auto r : rows) ++counts[ds.label(r)];
    return counts;
}

std::optional<SplitCandidate> nominal_split(const Dataset& ds, std::span<const std::size_t> rows, std::size_t attr,
                                            std::size_t min_leaf) {
    const auto classes = ds.schema().class_count();
    const auto levels = ds.schema()[attr].category_count();
    std::vector<std::vector<double>> branch(levels, std::vector<double>(classes, 0.0));
    std::vector<double> sizes(levels, 0.0), known_counts(classes, 0.0);
    double missing = 0.0;
    for (auto r : rows) {
        const auto& v = ds.at(r, attr);
        if (!v.is_nominal()) {
            missing += 1.0;
            continue;
        }
        branch[v.index()][ds.label(r)] += 1.0;
        known_counts[ds.label(r)] += 1.0;
        sizes[v.index()] += 1.0;
    }
    const double known = static_cast<double>(rows.size()) - missing;
    if (known <= 0.0) return std::nullopt;
    const auto big_enough = std::count_if(sizes.begin(), sizes.end(),
                                          [&](double s) { return s >= static_cast<double>(min_leaf); });
    if (big_enough < 2) return std::nullopt;

    double conditional = 0.0;
    for (std::size_t b = 0; b < levels; ++b)
        if (sizes[b] > 0.0) conditional += sizes[b] / known * entropy(branch[b]);
    const double gain = std::max(0.0, known / static_cast<double>(rows.size()) * (entropy(known_counts) - conditional));
    auto parts = sizes;
    if (missing > 0.0) parts.push_back(missing);
    const double split_info = entropy(parts);
    return SplitCandidate{attr, false, 0.0, gain, split_info > 0.0 ? gain / split_info : 0.0};
}

std::optional<SplitCandidate> numeric_split(const Dataset& ds, std::span<const std::size_t> rows, std::size_t attr,
                                            std::size_t min_leaf) {
    const auto classes = ds.schema().class_count();
    struct Point {
        double value;
        std::uint32_t cls;
    };
    std::vector<Point> pts;
    pts.reserve(rows.size());
    for (auto r : rows) {
        const auto& v = ds.at(r, attr);
        if (v.is_numeric()) pts.push_back({v.number(), ds.label(r)});
    }
    const std::size_t nk = pts.size();
    if (nk < 2 * min_leaf || nk < 2) return std::nullopt;
    std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.value < b.value; });

    // Groups of equal values: a boundary between two groups that are pure in the same class
    // can never be an optimal cut and is skipped.
    struct Group {
        std::size_t end;
        std::uint32_t cls;
        bool pure;
    };
    std::vector<Group> groups;
    for (std::size_t i = 0; i < nk; ++i) {
        if (i == 0 || pts[i - 1].value < pts[i].value)
            groups.push_back({i + 1, pts[i].cls, true});
        else {
            groups.back().end = i + 1;
            if (pts[i].cls != groups.back().cls) groups.back().pure = false;
        }
    }
    if (groups.size() < 2) return std::nullopt;

    std::vector<double> total(classes, 0.0), left(classes, 0.0), right(classes);
    for (const auto& p : pts) total[p.cls] += 1.0;
    const double h_known = entropy(total);
    const double n = static_cast<double>(rows.size());
    const double dk = static_cast<double>(nk);

    std::size_t pos = 0;
    double best_gain = -1.0;
    std::size_t best_split = 0;
    for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        for (; pos < groups[g].end; ++pos) left[pts[pos].cls] += 1.0;
        const std::size_t nl = groups[g].end;
        if (nl < min_leaf || nk - nl < min_leaf) continue;
        const auto& a = groups[g];
        const auto& b = groups[g + 1];
        if (a.pure && b.pure && a.cls == b.cls) continue;
        for (std::size_t c = 0; c < classes; ++c) right[c] = total[c] - left[c];
        const double dl = static_cast<double>(nl);
        const double cond = dl / dk * entropy(left) + (dk - dl) / dk * entropy(right);
        const double gain = std::max(0.0, dk / n * (h_known - cond));
        if (gain > best_gain + kGainEps) {
            best_gain = gain;
            best_split = nl;
        }
    }
    if (best_split == 0) return std::nullopt;

    std::vector<double> parts{static_cast<double>(best_split), static_cast<double>(nk - best_split)};
    if (nk < rows.size()) parts.push_back(n - dk);
    const double split_info = entropy(parts);
    return SplitCandidate{attr, true, midpoint(pts[best_split - 1].value, pts[best_split].value), best_gain,
                          split_info > 0.0 ? best_gain / split_info : 0.0};
}

class Grower {
public:
    Grower(const Dataset& ds, const TreeParams& params, Rng* rng, std::size_t k)
        : ds_(ds), params_(params), rng_(rng), k_(k), features_(ds.schema().feature_indices()) {
        params_.min_leaf = std::max<std::size_t>(1, params_.min_leaf);
    }

    std::vector<DecisionTree::Node> run(std::vector<std::size_t> rows) {
        grow(std::move(rows));
        return std::move(nodes_);
    }

private:
    std::vector<std::size_t> candidate_attributes() {
        if (!rng_ || k_ == 0 || k_ >= features_.size()) return features_;
        std::vector<std::size_t> pool = features_;
        for (std::size_t i = 0; i < k_; ++i) {
            const auto j = i + static_cast<std::size_t>(rng_->below(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k_);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    std::optional<SplitCandidate> choose(std::span<const std::size_t> rows) {
        const auto attrs = candidate_attributes();
        auto cands = evaluate_splits(ds_, rows, attrs, params_.min_leaf);
        std::erase_if(cands, [&](const SplitCandidate& c) {
            return params_.allow_zero_gain_splits ? c.gain < 0.0 : c.gain <= kGainEps;
        });
        if (cands.empty()) return std::nullopt;
        double mean = 0.0;
        for (const auto& c : cands) mean += c.gain;
        mean /= static_cast<double>(cands.size());

        std::optional<SplitCandidate> best;
        for (const auto& c : cands) {
            if (c.gain < mean - 1e-10) continue;
            if (!best || c.gain_ratio > best->gain_ratio + kGainEps) best = c;
        }
        return best;
    }

    std::uint32_t grow(std::vector<std::size_t> rows) {
        const auto index = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();
        DecisionTree::Node node;
        node.counts = class_counts(ds_, rows);
        node.size = static_cast<std::uint32_t>(rows.size());

        const auto nonzero = std::count_if(node.counts.begin(), node.counts.end(), [](auto c) { return c > 0; });
        std::optional<SplitCandidate> split;
        if (nonzero > 1 && rows.size() >= 2 * params_.min_leaf) split = choose(rows);
        if (!split) {
            nodes_[index] = std::move(node);
            return index;
        }

        const auto attr = split->attribute;
        const std::size_t branches = split->numeric ? 2 : ds_.schema()[attr].category_count();
        std::vector<std::vector<std::size_t>> parts(branches);
        std::vector<std::size_t> missing;
        for (auto r : rows) {
            const auto& v = ds_.at(r, attr);
            if (v.is_missing())
                missing.push_back(r);
            else if (split->numeric)
                parts[v.number() <= split->threshold ? 0 : 1].push_back(r);
            else
                parts[v.index()].push_back(r);
        }
        std::size_t majority = 0;
        for (std::size_t b = 1; b < branches; ++b)
            if (parts[b].size() > parts[majority].size()) majority = b;
        parts[majority].insert(parts[majority].end(), missing.begin(), missing.end());

        node.attribute = static_cast<std::int32_t>(attr);
        node.numeric = split->numeric;
        node.threshold = split->threshold;
        node.majority_branch = static_cast<std::uint32_t>(majority);
        rows.clear();
        rows.shrink_to_fit();
        for (auto& part : parts) {
            if (part.empty()) {
                // Unseen category: a leaf that reports the parent's distribution.
                DecisionTree::Node leaf;
                leaf.counts = node.counts;
                leaf.size = 0;
                node.children.push_back(static_cast<std::uint32_t>(nodes_.size()));
                nodes_.push_back(std::move(leaf));
            } else {
                node.children.push_back(grow(std::move(part)));
            }
        }
        nodes_[index] = std::move(node);
        return index;
    }

    const Dataset& ds_;
    TreeParams params_;
    Rng* rng_;
    std::size_t k_;
    std::vector<std::size_t> features_;
    std::vector<DecisionTree::Node> nodes_;
};

double leaf_errors(const DecisionTree::Node& n, double confidence) {
    if (n.size == 0) return 0.0;
    const auto top = *std::max_element(n.counts.begin(), n.counts.end());
    return stats::pessimistic_errors(n.size, static_cast<double>(n.size - top), confidence);
}

// Rebuilds the node array keeping only nodes reachable from the root, in preorder.
std::vector<DecisionTree::Node> compact(const std::vector<DecisionTree::Node>& nodes) {
    std::vector<DecisionTree::Node> out;
    auto visit = [&](auto&& self, std::uint32_t i) -> std::uint32_t {
        const auto at = static_cast<std::uint32_t>(out.size());
        out.push_back(nodes[i]);
        std::vector<std::uint32_t> kids;
        for (auto c : nodes[i].children) kids.push_back(self(self, c));
        out[at].children = std::move(kids);
        return at;
    };
    if (!nodes.empty()) visit(visit, 0);
    return out;
}

}  // namespace

std::vector<SplitCandidate> evaluate_splits(const Dataset& ds, std::span<const std::size_t> rows,
                                            std::span<const std::size_t> attributes, std::size_t min_leaf) {
    min_leaf = std::max<std::size_t>(1, min_leaf);
    std::vector<SplitCandidate> out;
    for (auto a : attributes) {
        auto c = ds.schema()[a].is_numeric() ? numeric_split(ds, rows, a, min_leaf)
                                             : nominal_split(ds, rows, a, min_leaf);
        if (c) out.push_back(*c);
    }
    return out;
}

DecisionTree grow_tree(const Dataset& ds, std::span<const std::size_t> rows, const TreeParams& params,
                       Rng* feature_rng, std::size_t features_per_split) {
    check_training_data(ds);
    if (rows.empty()) throw TrainingError(TrainingError::Kind::NoInstances, "no rows to grow a tree from");
    Grower g(ds, params, feature_rng, features_per_split);
    return DecisionTree(ds.schema(), g.run({rows.begin(), rows.end()}));
}

DecisionTree prune_tree(const DecisionTree& tree, double confidence) {
    if (!(confidence > 0.0 && confidence <= 0.5)) throw ConfigError("confidence factor must lie in (0, 0.5]");
    auto nodes = tree.nodes();
    auto visit = [&](auto&& self, std::uint32_t i) -> double {
        auto& n = nodes[i];
        if (n.is_leaf()) return leaf_errors(n, confidence);
        double subtree = 0.0;
        for (auto c : n.children) subtree += self(self, c);
        const double as_leaf = leaf_errors(nodes[i], confidence);
        if (as_leaf <= subtree + 1e-9) {
            auto& m = nodes[i];
            m.attribute = -1;
            m.numeric = false;
            m.threshold = 0.0;
            m.children.clear();
            m.majority_branch = 0;
            return as_leaf;
        }
        return subtree;
    };
    if (!nodes.empty()) visit(visit, 0);
    return DecisionTree(tree.schema(), compact(nodes));
}

DecisionTree train_tree(const Dataset& ds, const TreeParams& params) {
    check_training_data(ds);
    std::vector<std::size_t> rows(ds.size());
    std::iota(rows.begin(), rows.end(), 0);
    auto tree = grow_tree(ds, rows, params);
    return params.prune ? prune_tree(tree, params.confidence) : tree;
}

std::size_t DecisionTree::leaf_for(Row row) const {
    std::size_t i = 0;
    while (!nodes_[i].is_leaf()) {
        const auto& n = nodes_[i];
        const Value& v = row[static_cast<std::size_t>(n.attribute)];
        std::size_t branch;
        if (v.is_missing())
            branch = n.majority_branch;
        else if (n.numeric)
            branch = v.number() <= n.threshold ? 0 : 1;
        else
            branch = v.index();
        i = n.children[branch];
    }
    return i;
}

ClassDistribution DecisionTree::predict(Row row) const {
    check_row(schema_, row);
    const auto& leaf = nodes_[leaf_for(row)];
    ClassDistribution dist(leaf.counts.size(), 0.0);
    double total = 0.0;
    for (auto c : leaf.counts) total += c;
    if (total <= 0.0) {
        std::fill(dist.begin(), dist.end(), 1.0 / static_cast<double>(dist.size()));
        return dist;
    }
    for (std::size_t c = 0; c < dist.size(); ++c) dist[c] = leaf.counts[c] / total;
    return dist;
}

std::size_t DecisionTree::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

std::size_t DecisionTree::depth() const {
    if (nodes_.empty()) return 0;
    auto visit = [&](auto&& self, std::uint32_t i) -> std::size_t {
        std::size_t d = 0;
        for (auto c : nodes_[i].children) d = std::max(d, 1 + self(self, c));
        return d;
    };
    return visit(visit, 0);
}

double DecisionTree::pessimistic_error(double confidence) const {
    double total = 0.0;
    for (const auto& n : nodes_)
        if (n.is_leaf()) total += leaf_errors(n, confidence);
    return total;
}

}  // namespace heartml
