#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace heartml {

/// Two-class outcome counts; "positive" is the class of interest (infected).
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
    std::uint64_t positives() const noexcept { return tp + fn; }
    std::uint64_t negatives() const noexcept { return tn + fp; }

    /// Records one prediction.
    void add(bool actual_positive, bool predicted_positive) noexcept;

    ConfusionMatrix& operator+=(const ConfusionMatrix& o) noexcept;
    friend ConfusionMatrix operator+(ConfusionMatrix a, const ConfusionMatrix& b) noexcept { return a += b; }
    bool operator==(const ConfusionMatrix&) const = default;
};

// Percentages in [0, 100].
double accuracy(const ConfusionMatrix& cm);                // throws MetricError(EmptyMatrix)
double sensitivity(const ConfusionMatrix& cm);             // throws MetricError(NoPositives)
double specificity(const ConfusionMatrix& cm);             // throws MetricError(NoNegatives)
double misclassification_rate(const ConfusionMatrix& cm);  // throws MetricError(EmptyMatrix)

/// Clopper-Pearson exact interval for successes/n, in percent.
/// Throws MetricError(InvalidCount) unless 0 <= successes <= n and n > 0, or level outside (0, 1).
std::pair<double, double> exact_binomial_ci(std::uint64_t successes, std::uint64_t n, double level = 0.95);

/// 100 * num / den rendered with two decimals, rounding half up, computed exactly in integers.
std::string format_ratio_percent(std::uint64_t num, std::uint64_t den);
/// A percentage rendered with two decimals, rounding half up.
std::string format_percent(double value);

/// One reported rate: its defining counts and, when the denominator is positive, value and CI.
struct Metric {
    std::uint64_t successes = 0;
    std::uint64_t total = 0;
    std::optional<double> value;  // percent
    std::optional<std::pair<double, double>> ci;

    /// "97.54" or "undefined".
    std::string value_text() const;
    /// "95.83% to 98.69%" or "undefined".
    std::string ci_text() const;
};

/// Accuracy, sensitivity and specificity of a matrix with 95% (or `level`) exact intervals.
struct MetricsReport {
    Metric accuracy;
    Metric sensitivity;
    Metric specificity;
    double level = 0.95;

    static MetricsReport from(const ConfusionMatrix& cm, double level = 0.95);
};

}  // namespace heartml
