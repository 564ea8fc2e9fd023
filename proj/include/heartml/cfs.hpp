#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "heartml/data.hpp"
#include "heartml/discretize.hpp"

namespace heartml {

/// Set of feature (non-target) attribute indices, kept sorted ascending.
using FeatureSubset = std::vector<std::size_t>;

/// Symmetric-uncertainty memo over the discretized columns of a dataset.
///
/// Entries are computed on first use. Concurrent readers may compute the same entry twice;
/// every writer stores the same value, so lookups are safe from several threads.
class CorrelationCache {
public:
    CorrelationCache(const Dataset& ds, DiscretizationMap dmap);

    std::size_t attribute_count() const noexcept { return width_; }
    std::size_t target_index() const noexcept { return target_; }
    const DiscretizationMap& discretization() const noexcept { return dmap_; }

    /// SU between two attributes (either may be the target). Symmetric in its arguments.
    double su(std::size_t a, std::size_t b) const;

    /// Computes every pair up front with up to `threads` OpenMP workers.
    void fill(int threads = 0) const;

    /// Full SU matrix (width x width, row-major); fills missing entries serially.
    std::vector<double> matrix() const;

private:
    double compute(std::size_t a, std::size_t b) const;
    std::size_t slot(std::size_t a, std::size_t b) const noexcept;

    std::size_t width_ = 0;
    std::size_t target_ = 0;
    DiscretizationMap dmap_;
    std::vector<std::vector<std::int32_t>> codes_;  // per attribute, one code per row
    std::vector<std::size_t> levels_;
    std::unique_ptr<std::atomic<double>[]> memo_;
};

/// k * mean(r_cf) / sqrt(k + k(k-1) * mean(r_ff)), written with the sums over the subset's
/// feature-class and unordered feature-feature correlations.
double hall_merit(double rcf_sum, double rff_sum, std::size_t k);

/// CFS merit with SU as the correlation. Throws TrainingError(EmptySubset) for an empty subset.
double cfs_merit(const CorrelationCache& cache, std::span<const std::size_t> subset);

struct BestFirstOptions {
    std::size_t max_stale = 5;
    FeatureSubset start;  // empty: search starts from the empty set
    int threads = 0;      // 0: OpenMP default
};

struct SelectionResult {
    FeatureSubset features;
    double merit = 0.0;
    std::size_t evaluated = 0;
};

/// Forward best-first search over feature subsets scored by cfs_merit.
SelectionResult best_first_select(const CorrelationCache& cache, const BestFirstOptions& options = {});

/// Convenience: discretize, build the cache, and search.
SelectionResult select_cfs(const Dataset& ds, const BinningOptions& binning = {},
                           const BestFirstOptions& options = {});

namespace reference {

/// Serial SU matrix, computed pair by pair without the memo. Kept for testing the parallel fill.
std::vector<double> su_matrix_serial(const Dataset& ds, const DiscretizationMap& dmap);

}  // namespace reference

}  // namespace heartml
