#include "heartml/cfs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <omp.h>

#include "heartml/errors.hpp"
#include "heartml/info.hpp"

namespace heartml {

namespace {

constexpr double kUnset = -1.0;
constexpr double kImprovement = 1e-12;

std::vector<std::int32_t> column_codes(const Dataset& ds, const DiscretizationMap& dmap, std::size_t attr) {
    std::vector<std::int32_t> out(ds.size());
    for (std::size_t r = 0; r < ds.size(); ++r) out[r] = dmap.code(ds.schema(), attr, ds.at(r, attr));
    return out;
}

int worker_count(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace

CorrelationCache::CorrelationCache(const Dataset& ds, DiscretizationMap dmap)
    : width_(ds.width()), target_(ds.schema().target_index()), dmap_(std::move(dmap)) {
    if (dmap_.cuts.size() < width_) dmap_.cuts.resize(width_);
    codes_.reserve(width_);
    for (std::size_t a = 0; a < width_; ++a) {
        codes_.push_back(column_codes(ds, dmap_, a));
        levels_.push_back(dmap_.levels(ds.schema(), a));
    }
    memo_ = std::make_unique<std::atomic<double>[]>(width_ * width_);
    for (std::size_t i = 0; i < width_ * width_; ++i) memo_[i].store(kUnset, std::memory_order_relaxed);
}

std::size_t CorrelationCache::slot(std::size_t a, std::size_t b) const noexcept {
    return a < b ? a * width_ + b : b * width_ + a;
}

double CorrelationCache::compute(std::size_t a, std::size_t b) const {
    const auto lo = std::min(a, b), hi = std::max(a, b);
    return symmetric_uncertainty(codes_[lo], levels_[lo], codes_[hi], levels_[hi]);
}

double CorrelationCache::su(std::size_t a, std::size_t b) const {
    auto& cell = memo_[slot(a, b)];
    double v = cell.load(std::memory_order_acquire);
    if (v == kUnset) {
        v = compute(a, b);
        cell.store(v, std::memory_order_release);
    }
    return v;
}

void CorrelationCache::fill(int threads) const {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < width_; ++a)
        for (std::size_t b = a; b < width_; ++b) pairs.emplace_back(a, b);
    const auto count = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_count(threads))
    for (std::ptrdiff_t i = 0; i < count; ++i) su(pairs[i].first, pairs[i].second);
}

std::vector<double> CorrelationCache::matrix() const {
    std::vector<double> m(width_ * width_);
    for (std::size_t a = 0; a < width_; ++a)
        for (std::size_t b = 0; b < width_; ++b) m[a * width_ + b] = su(a, b);
    return m;
}

double cfs_merit(const CorrelationCache& cache, std::span<const std::size_t> subset) {
    if (subset.empty()) throw TrainingError(TrainingError::Kind::EmptySubset, "CFS merit of an empty subset");
    const auto t = cache.target_index();
    double rcf = 0.0, rff = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        rcf += cache.su(subset[i], t);
        for (std::size_t j = i + 1; j < subset.size(); ++j) rff += cache.su(subset[i], subset[j]);
    }
    return hall_merit(rcf, rff, subset.size());
}

double hall_merit(double rcf_sum, double rff_sum, std::size_t k) {
    if (k == 0) throw TrainingError(TrainingError::Kind::EmptySubset, "CFS merit of an empty subset");
    return rcf_sum / std::sqrt(static_cast<double>(k) + 2.0 * rff_sum);
}

SelectionResult best_first_select(const CorrelationCache& cache, const BestFirstOptions& options) {
    struct Node {
        FeatureSubset subset;
        double merit;
    };
    // Higher merit first; equal merits fall back to the lexicographically smaller index sequence.
    auto better = [](const Node& a, const Node& b) {
        if (a.merit != b.merit) return a.merit > b.merit;
        return a.subset < b.subset;
    };

    std::vector<std::size_t> features;
    for (std::size_t a = 0; a < cache.attribute_count(); ++a)
        if (a != cache.target_index()) features.push_back(a);

    FeatureSubset start = options.start;
    std::sort(start.begin(), start.end());
    start.erase(std::unique(start.begin(), start.end()), start.end());
    for (auto f : start)
        if (f >= cache.attribute_count() || f == cache.target_index())
            throw ConfigError("start subset contains a non-feature index");

    SelectionResult result;
    Node best{start, start.empty() ? 0.0 : cfs_merit(cache, start)};
    result.evaluated = start.empty() ? 0 : 1;

    std::vector<Node> open{best};
    std::set<FeatureSubset> visited{start};
    std::size_t stale = 0;
    const int threads = worker_count(options.threads);

    while (stale < options.max_stale && !open.empty()) {
        auto top = std::min_element(open.begin(), open.end(), better);
        Node node = std::move(*top);
        open.erase(top);

        std::vector<Node> children;
        for (auto f : features) {
            if (std::binary_search(node.subset.begin(), node.subset.end(), f)) continue;
            FeatureSubset child = node.subset;
            child.insert(std::upper_bound(child.begin(), child.end(), f), f);
            if (!visited.insert(child).second) continue;
            children.push_back({std::move(child), 0.0});
        }
        const auto count = static_cast<std::ptrdiff_t>(children.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::ptrdiff_t i = 0; i < count; ++i) children[i].merit = cfs_merit(cache, children[i].subset);
        result.evaluated += children.size();

        bool improved = false;
        for (auto& c : children) {
            if (c.merit > best.merit + kImprovement || (improved && better(c, best))) {
                best = c;
                improved = true;
            }
        }
        stale = improved ? 0 : stale + 1;
        for (auto& c : children) open.push_back(std::move(c));
    }

    result.features = std::move(best.subset);
    result.merit = best.merit;
    return result;
}

SelectionResult select_cfs(const Dataset& ds, const BinningOptions& binning, const BestFirstOptions& options) {
    if (ds.schema().feature_count() == 0) return {};
    CorrelationCache cache(ds, build_discretization(ds, binning));
    cache.fill(options.threads);
    return best_first_select(cache, options);
}

namespace reference {

std::vector<double> su_matrix_serial(const Dataset& ds, const DiscretizationMap& dmap) {
    const auto w = ds.width();
    DiscretizationMap map = dmap;
    if (map.cuts.size() < w) map.cuts.resize(w);
    std::vector<std::vector<std::int32_t>> codes;
    for (std::size_t a = 0; a < w; ++a) codes.push_back(column_codes(ds, map, a));
    std::vector<double> m(w * w);
    for (std::size_t a = 0; a < w; ++a)
        for (std::size_t b = a; b < w; ++b) {
            const double v =
                symmetric_uncertainty(codes[a], map.levels(ds.schema(), a), codes[b], map.levels(ds.schema(), b));
            m[a * w + b] = m[b * w + a] = v;
        }
    return m;
}

}  // namespace reference

}  // namespace heartml
