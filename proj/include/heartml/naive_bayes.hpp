#pragma once

#include <cstddef>
#include <vector>

#include "heartml/classifier.hpp"
#include "heartml/data.hpp"

namespace heartml {

struct NaiveBayesParams {
    double smoothing = 1.0;  // Laplace constant added to every category count
};

/// Class priors plus per-feature class-conditional likelihoods: smoothed category counts for
/// nominal features, Gaussians (sample stddev, floored) for numeric ones.
struct NaiveBayesModel {
    struct Feature {
        std::size_t attribute = 0;
        bool numeric = false;
        std::vector<std::vector<double>> counts;  // nominal: [class][category]
        std::vector<double> mean;                 // numeric: [class]
        std::vector<double> stddev;               // numeric: [class], already floored
        bool usable = true;                       // false when some class saw no value

        bool operator==(const Feature&) const = default;
    };

    Schema schema;
    double smoothing = 1.0;
    std::vector<double> priors;
    std::vector<Feature> features;

    /// P(category | class) after smoothing.
    double category_probability(const Feature& f, std::size_t cls, std::size_t category) const;

    ClassDistribution predict(Row row) const;

    bool operator==(const NaiveBayesModel&) const = default;
};

/// Throws TrainingError(NoInstances, EmptyClass, MissingTarget).
NaiveBayesModel train_naive_bayes(const Dataset& ds, const NaiveBayesParams& params = {});

/// Relative floor on per-class stddev: this times the attribute's global range.
inline constexpr double kStddevFloorFraction = 1e-3;

}  // namespace heartml
