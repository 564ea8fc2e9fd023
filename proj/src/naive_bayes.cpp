#include "heartml/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heartml/errors.hpp"

namespace heartml {

double NaiveBayesModel::category_probability(const Feature& f, std::size_t cls, std::size_t category) const {
    const auto& row = f.counts[cls];
    double total = 0.0;
    for (double c : row) total += c;
    return (row[category] + smoothing) / (total + smoothing * static_cast<double>(row.size()));
}

NaiveBayesModel train_naive_bayes(const Dataset& ds, const NaiveBayesParams& params) {
    check_training_data(ds);
    if (!(params.smoothing >= 0.0)) throw ConfigError("smoothing must be non-negative");
    const Schema& schema = ds.schema();
    const auto classes = schema.class_count();

    const auto class_counts = ds.class_counts();
    for (std::size_t c = 0; c < classes; ++c)
        if (class_counts[c] == 0)
            throw TrainingError(TrainingError::Kind::EmptyClass,
                                "class '" + schema.target().categories[c] + "' has no training instances");

    NaiveBayesModel m;
    m.schema = schema;
    m.smoothing = params.smoothing;
    for (auto cc : class_counts) m.priors.push_back(static_cast<double>(cc) / static_cast<double>(ds.size()));

    for (auto a : schema.feature_indices()) {
        NaiveBayesModel::Feature f;
        f.attribute = a;
        f.numeric = schema[a].is_numeric();
        if (!f.numeric) {
            f.counts.assign(classes, std::vector<double>(schema[a].category_count(), 0.0));
            for (std::size_t r = 0; r < ds.size(); ++r) {
                const auto& v = ds.at(r, a);
                if (v.is_nominal()) f.counts[ds.label(r)][v.index()] += 1.0;
            }
        } else {
            std::vector<double> sum(classes, 0.0), n(classes, 0.0);
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t r = 0; r < ds.size(); ++r) {
                const auto& v = ds.at(r, a);
                if (!v.is_numeric()) continue;
                sum[ds.label(r)] += v.number();
                n[ds.label(r)] += 1.0;
                lo = std::min(lo, v.number());
                hi = std::max(hi, v.number());
            }
            f.mean.assign(classes, 0.0);
            for (std::size_t c = 0; c < classes; ++c) {
                if (n[c] > 0) f.mean[c] = sum[c] / n[c];
                else f.usable = false;
            }
            std::vector<double> ss(classes, 0.0);
            for (std::size_t r = 0; r < ds.size(); ++r) {
                const auto& v = ds.at(r, a);
                if (!v.is_numeric()) continue;
                const double d = v.number() - f.mean[ds.label(r)];
                ss[ds.label(r)] += d * d;
            }
            const double range = hi > lo ? hi - lo : 0.0;
            // A constant column still needs a positive width; its factor is identical across classes.
            const double floor = range > 0.0 ? kStddevFloorFraction * range : kStddevFloorFraction;
            f.stddev.assign(classes, floor);
            for (std::size_t c = 0; c < classes; ++c)
                if (n[c] > 1) f.stddev[c] = std::max(floor, std::sqrt(ss[c] / (n[c] - 1.0)));
        }
        m.features.push_back(std::move(f));
    }
    return m;
}

ClassDistribution NaiveBayesModel::predict(Row row) const {
    check_row(schema, row);
    const auto classes = priors.size();
    std::vector<double> logp(classes);
    for (std::size_t c = 0; c < classes; ++c)
        logp[c] = priors[c] > 0.0 ? std::log(priors[c]) : -std::numeric_limits<double>::infinity();

    for (const auto& f : features) {
        const Value& v = row[f.attribute];
        if (v.is_missing() || !f.usable) continue;
        for (std::size_t c = 0; c < classes; ++c) {
            if (f.numeric) {
                const double z = (v.number() - f.mean[c]) / f.stddev[c];
                logp[c] += -0.5 * z * z - std::log(f.stddev[c]) - 0.5 * std::log(2.0 * std::numbers::pi);
            } else {
                logp[c] += std::log(category_probability(f, c, v.index()));
            }
        }
    }

    const double top = *std::max_element(logp.begin(), logp.end());
    ClassDistribution dist(classes, 0.0);
    if (!std::isfinite(top)) {
        // Every class impossible (zero smoothing and unseen categories): fall back to priors.
        return priors;
    }
    double total = 0.0;
    for (std::size_t c = 0; c < classes; ++c) total += dist[c] = std::exp(logp[c] - top);
    for (auto& p : dist) p /= total;
    return dist;
}

}  // namespace heartml
