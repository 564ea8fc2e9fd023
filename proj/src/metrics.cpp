#include "heartml/metrics.hpp"

#include <cmath>

#include "heartml/errors.hpp"
#include "heartml/stats.hpp"

namespace heartml {

void ConfusionMatrix::add(bool actual_positive, bool predicted_positive) noexcept {
    if (actual_positive) ++(predicted_positive ? tp : fn);
    else ++(predicted_positive ? fp : tn);
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) noexcept {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
}

double accuracy(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw MetricError(MetricError::Kind::EmptyMatrix, "accuracy of an empty confusion matrix");
    return 100.0 * static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

double sensitivity(const ConfusionMatrix& cm) {
    if (cm.positives() == 0) throw MetricError(MetricError::Kind::NoPositives, "sensitivity without positive cases");
    return 100.0 * static_cast<double>(cm.tp) / static_cast<double>(cm.positives());
}

double specificity(const ConfusionMatrix& cm) {
    if (cm.negatives() == 0) throw MetricError(MetricError::Kind::NoNegatives, "specificity without negative cases");
    return 100.0 * static_cast<double>(cm.tn) / static_cast<double>(cm.negatives());
}

double misclassification_rate(const ConfusionMatrix& cm) {
    if (cm.total() == 0)
        throw MetricError(MetricError::Kind::EmptyMatrix, "misclassification rate of an empty confusion matrix");
    return 100.0 * static_cast<double>(cm.fp + cm.fn) / static_cast<double>(cm.total());
}

std::pair<double, double> exact_binomial_ci(std::uint64_t successes, std::uint64_t n, double level) {
    if (n == 0 || successes > n)
        throw MetricError(MetricError::Kind::InvalidCount,
                          "invalid binomial counts " + std::to_string(successes) + "/" + std::to_string(n));
    if (!(level > 0.0 && level < 1.0)) throw MetricError(MetricError::Kind::InvalidCount, "level must lie in (0, 1)");
    const double alpha = 1.0 - level;
    const double x = static_cast<double>(successes), dn = static_cast<double>(n);
    const double lower = successes == 0 ? 0.0 : stats::beta_quantile(alpha / 2.0, x, dn - x + 1.0);
    const double upper = successes == n ? 1.0 : stats::beta_quantile(1.0 - alpha / 2.0, x + 1.0, dn - x);
    return {100.0 * lower, 100.0 * upper};
}

std::string format_ratio_percent(std::uint64_t num, std::uint64_t den) {
    // hundredths of a percent = floor((10000 * num) / den + 1/2)
    const std::uint64_t h = (20000 * num + den) / (2 * den);
    std::string frac = std::to_string(h % 100);
    if (frac.size() < 2) frac.insert(0, "0");
    return std::to_string(h / 100) + "." + frac;
}

std::string format_percent(double value) {
    const double h = std::floor(value * 100.0 + 0.5 + 1e-9);
    const auto hi = static_cast<long long>(h);
    std::string frac = std::to_string(std::llabs(hi) % 100);
    if (frac.size() < 2) frac.insert(0, "0");
    return (hi < 0 ? "-" : "") + std::to_string(std::llabs(hi) / 100) + "." + frac;
}

std::string Metric::value_text() const {
    return value ? format_ratio_percent(successes, total) : std::string("undefined");
}

std::string Metric::ci_text() const {
    return ci ? format_percent(ci->first) + "% to " + format_percent(ci->second) + "%" : std::string("undefined");
}

MetricsReport MetricsReport::from(const ConfusionMatrix& cm, double level) {
    auto make = [&](std::uint64_t s, std::uint64_t n) {
        Metric m{s, n, std::nullopt, std::nullopt};
        if (n > 0) {
            m.value = 100.0 * static_cast<double>(s) / static_cast<double>(n);
            m.ci = exact_binomial_ci(s, n, level);
        }
        return m;
    };
    MetricsReport r;
    r.level = level;
    r.accuracy = make(cm.tp + cm.tn, cm.total());
    r.sensitivity = make(cm.tp, cm.positives());
    r.specificity = make(cm.tn, cm.negatives());
    return r;
}

}  // namespace heartml
