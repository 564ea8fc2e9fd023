#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "heartml/cv.hpp"
#include "heartml/rng.hpp"

namespace heartml::test {

// One numeric column "x" and a {0,1} target with exactly `positives` ones, rows in random order.
inline Dataset labeled_rows(Rng& rng, std::size_t n, std::size_t positives) {
    Schema s({AttributeSpec::numeric("x"), AttributeSpec::nominal("y", {"0", "1"}, AttributeRole::Target)});
    std::vector<std::uint32_t> labels(n, 0);
    std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(positives), 1u);
    rng.shuffle(std::span(labels));
    Dataset ds(s);
    for (auto y : labels) {
        const Value row[] = {Value::numeric(rng.normal() + y), Value::nominal(y)};
        ds.add_row(row);
    }
    return ds;
}

// Predicts the training majority unless x is far above the training mean.
inline Trainer majority_trainer() {
    return [](const Dataset& train) -> Predictor {
        std::size_t ones = 0;
        double mean = 0;
        for (std::size_t r = 0; r < train.size(); ++r) {
            ones += train.label(r);
            mean += train.at(r, 0).number();
        }
        mean /= static_cast<double>(std::max<std::size_t>(train.size(), 1));
        const std::size_t major = 2 * ones >= train.size() ? 1 : 0;
        return [major, mean](Row row) -> std::size_t { return row[0].number() > mean + 1.0 ? 1 : major; };
    };
}

// Empty when the plan and result satisfy every invariant, otherwise a description of the first violation.
inline std::string check_cv(const Dataset& ds, const CVPlan& plan, const CVResult& res, std::size_t positive = 1) {
    const std::size_t n = ds.size(), k = plan.folds;
    if (plan.fold_rows.size() != k) return "fold count";
    std::vector<int> seen(n, 0);
    std::size_t smallest = n, largest = 0;
    for (const auto& f : plan.fold_rows) {
        if (!std::is_sorted(f.begin(), f.end())) return "fold not sorted";
        smallest = std::min(smallest, f.size());
        largest = std::max(largest, f.size());
        for (auto r : f) {
            if (r >= n) return "row out of range";
            ++seen[r];
        }
    }
    for (std::size_t r = 0; r < n; ++r)
        if (seen[r] != 1) return "row " + std::to_string(r) + " appears " + std::to_string(seen[r]) + " times";
    if (largest - smallest > 1) return "fold sizes differ by more than one";
    if (plan.stratified) {
        for (std::size_t c = 0; c < ds.schema().class_count(); ++c) {
            std::size_t lo = n, hi = 0;
            for (const auto& f : plan.fold_rows) {
                const auto m = static_cast<std::size_t>(
                    std::count_if(f.begin(), f.end(), [&](std::size_t r) { return ds.label(r) == c; }));
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
            if (hi - lo > 1) return "class " + std::to_string(c) + " spread over folds by more than one";
        }
    }
    if (res.fold_matrices.size() != k) return "fold matrix count";
    ConfusionMatrix sum;
    for (std::size_t f = 0; f < k; ++f) {
        if (res.fold_matrices[f].total() != plan.fold_rows[f].size()) return "fold matrix total";
        sum += res.fold_matrices[f];
    }
    if (!(sum == res.pooled)) return "folds do not sum to the pooled matrix";
    if (res.pooled.total() != n) return "pooled total differs from n";
    ConfusionMatrix recount;
    for (std::size_t r = 0; r < n; ++r) recount.add(ds.label(r) == positive, res.predictions[r] == positive);
    if (!(recount == res.pooled)) return "predictions disagree with the pooled matrix";
    return {};
}

struct CvFuzzCase {
    std::size_t n, k, positives;
    bool stratified;
    std::uint64_t seed;
};

inline CvFuzzCase cv_fuzz_case(Rng& rng, std::size_t i) {
    CvFuzzCase c{};
    c.k = 2 + rng.below(19);
    c.n = c.k + rng.below(400);
    const double ratio = 0.02 + 0.96 * rng.uniform();
    c.positives = std::min(c.n, static_cast<std::size_t>(ratio * static_cast<double>(c.n) + 0.5));
    c.stratified = i % 5 != 4;
    c.seed = rng.next();
    return c;
}

}  // namespace heartml::test
