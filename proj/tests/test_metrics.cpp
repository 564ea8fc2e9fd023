#include <doctest.h>

#include <boost/math/distributions/beta.hpp>

#include <cmath>
#include <cstdio>
#include <string>

#include "heartml/errors.hpp"
#include "heartml/metrics.hpp"
#include "heartml/rng.hpp"
#include "published.hpp"

using namespace heartml;
using doctest::Approx;

namespace {

// Reads "lo% to hi%".
std::pair<double, double> parse_interval(const char* text) {
    double lo = 0, hi = 0;
    REQUIRE(std::sscanf(text, "%lf%% to %lf%%", &lo, &hi) == 2);
    return {lo, hi};
}

std::pair<double, double> boost_interval(std::uint64_t x, std::uint64_t n, double level) {
    using boost::math::beta_distribution;
    const double a = (1.0 - level) / 2.0;
    const double lo = x == 0 ? 0.0 : quantile(beta_distribution<>(double(x), double(n - x + 1)), a);
    const double hi = x == n ? 1.0 : quantile(beta_distribution<>(double(x + 1), double(n - x)), 1.0 - a);
    return {100.0 * lo, 100.0 * hi};
}

}  // namespace

TEST_CASE("rates from a matrix") {
    const ConfusionMatrix cm{.tp = 8, .tn = 6, .fp = 4, .fn = 2};
    CHECK(accuracy(cm) == Approx(70.0));
    CHECK(sensitivity(cm) == Approx(80.0));
    CHECK(specificity(cm) == Approx(60.0));
    CHECK(misclassification_rate(cm) == Approx(30.0));
    CHECK(cm.total() == 20);
    CHECK(cm.positives() == 10);
    CHECK(cm.negatives() == 10);
}

TEST_CASE("add and sum") {
    ConfusionMatrix a;
    a.add(true, true);
    a.add(true, false);
    a.add(false, true);
    a.add(false, false);
    a.add(false, false);
    CHECK(a == ConfusionMatrix{.tp = 1, .tn = 2, .fp = 1, .fn = 1});
    const ConfusionMatrix b{.tp = 3, .tn = 0, .fp = 0, .fn = 5};
    CHECK(a + b == ConfusionMatrix{.tp = 4, .tn = 2, .fp = 1, .fn = 6});
}

TEST_CASE("undefined rates throw") {
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const MetricError& e) {
            return e.kind();
        }
        FAIL("no MetricError");
        return MetricError::Kind::InvalidCount;
    };
    const ConfusionMatrix empty;
    const ConfusionMatrix only_neg{.tp = 0, .tn = 3, .fp = 1, .fn = 0};
    const ConfusionMatrix only_pos{.tp = 2, .tn = 0, .fp = 0, .fn = 1};
    CHECK(kind_of([&] { accuracy(empty); }) == MetricError::Kind::EmptyMatrix);
    CHECK(kind_of([&] { misclassification_rate(empty); }) == MetricError::Kind::EmptyMatrix);
    CHECK(kind_of([&] { sensitivity(only_neg); }) == MetricError::Kind::NoPositives);
    CHECK(kind_of([&] { specificity(only_pos); }) == MetricError::Kind::NoNegatives);
    CHECK(kind_of([] { exact_binomial_ci(5, 4); }) == MetricError::Kind::InvalidCount);
    CHECK(kind_of([] { exact_binomial_ci(0, 0); }) == MetricError::Kind::InvalidCount);
    CHECK(kind_of([] { exact_binomial_ci(1, 2, 1.0); }) == MetricError::Kind::InvalidCount);
    CHECK(kind_of([] { exact_binomial_ci(1, 2, 0.0); }) == MetricError::Kind::InvalidCount);

    const auto r = MetricsReport::from(only_pos);
    CHECK(r.specificity.value_text() == "undefined");
    CHECK(r.specificity.ci_text() == "undefined");
    CHECK(r.sensitivity.value_text() == "66.67");
}

TEST_CASE("two-decimal formatting rounds half up") {
    CHECK(format_ratio_percent(1, 8) == "12.50");
    CHECK(format_ratio_percent(1, 3) == "33.33");
    CHECK(format_ratio_percent(2, 3) == "66.67");
    CHECK(format_ratio_percent(1, 80000) == "0.00");
    CHECK(format_ratio_percent(1, 20000) == "0.01");  // exactly 0.005 -> up
    CHECK(format_ratio_percent(1, 20001) == "0.00");
    CHECK(format_ratio_percent(7, 7) == "100.00");
    CHECK(format_ratio_percent(0, 7) == "0.00");
    CHECK(format_percent(97.125) == "97.13");
    CHECK(format_percent(97.1249) == "97.12");
    CHECK(format_percent(100.0) == "100.00");
    CHECK(format_percent(0.004) == "0.00");
}

TEST_CASE("exact interval edges") {
    auto [lo0, hi0] = exact_binomial_ci(0, 10);
    CHECK(lo0 == 0.0);
    CHECK(hi0 == Approx(100.0 * (1.0 - std::pow(0.025, 0.1))).epsilon(1e-10));
    auto [lon, hin] = exact_binomial_ci(10, 10);
    CHECK(hin == 100.0);
    CHECK(lon == Approx(100.0 * std::pow(0.025, 0.1)).epsilon(1e-10));
}

TEST_CASE("exact interval matches beta quantiles") {
    Rng rng(77);
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t n = 1 + rng.below(600);
        const std::uint64_t x = rng.below(n + 1);
        const double level = i % 3 == 0 ? 0.9 : (i % 3 == 1 ? 0.95 : 0.99);
        const auto got = exact_binomial_ci(x, n, level);
        const auto want = boost_interval(x, n, level);
        CAPTURE(x);
        CAPTURE(n);
        CHECK(got.first == Approx(want.first).epsilon(1e-9).scale(1.0));
        CHECK(got.second == Approx(want.second).epsilon(1e-9).scale(1.0));
        const double p = 100.0 * double(x) / double(n);
        CHECK(got.first <= p + 1e-12);
        CHECK(p <= got.second + 1e-12);
        CHECK(got.first >= 0.0);
        CHECK(got.second <= 100.0);
    }
}

TEST_CASE("wider level gives a wider interval") {
    for (std::uint64_t x : {0u, 3u, 17u, 40u}) {
        auto a = exact_binomial_ci(x, 40, 0.9);
        auto b = exact_binomial_ci(x, 40, 0.99);
        CHECK(b.first <= a.first);
        CHECK(a.second <= b.second);
    }
}

TEST_CASE("published matrices reproduce the printed rates") {
    for (const auto& e : published::kExperiments) {
        CAPTURE(e.name);
        CHECK(format_ratio_percent(e.cm.tp + e.cm.tn, e.cm.total()) == std::string(e.accuracy.value));
        CHECK(format_ratio_percent(e.cm.tp, e.cm.positives()) == std::string(e.sensitivity.value));
        CHECK(format_ratio_percent(e.cm.tn, e.cm.negatives()) == std::string(e.specificity.value));
        CHECK(format_percent(accuracy(e.cm)) == std::string(e.accuracy.value));
        CHECK(format_percent(sensitivity(e.cm)) == std::string(e.sensitivity.value));
        CHECK(format_percent(specificity(e.cm)) == std::string(e.specificity.value));
        const auto r = MetricsReport::from(e.cm);
        CHECK(r.accuracy.successes == e.accuracy.successes);
        CHECK(r.accuracy.total == e.accuracy.n);
        CHECK(r.sensitivity.successes == e.sensitivity.successes);
        CHECK(r.sensitivity.total == e.sensitivity.n);
        CHECK(r.specificity.successes == e.specificity.successes);
        CHECK(r.specificity.total == e.specificity.n);
    }
}

TEST_CASE("published intervals within a hundredth of a point") {
    for (const auto& e : published::kExperiments) {
        for (const auto* rate : {&e.accuracy, &e.sensitivity, &e.specificity}) {
            CAPTURE(e.name);
            CAPTURE(rate->ci);
            const auto want = parse_interval(rate->ci);
            const auto got = exact_binomial_ci(rate->successes, rate->n);
            CHECK(std::abs(got.first - want.first) <= 0.01 + 1e-9);
            CHECK(std::abs(got.second - want.second) <= 0.01 + 1e-9);
        }
    }
    const auto r = MetricsReport::from(published::kExperiments[0].cm);
    CHECK(r.sensitivity.ci_text() == "97.12% to 99.79%");
    CHECK(MetricsReport::from(published::kExperiments[5].cm).sensitivity.ci_text() == "98.78% to 100.00%");
}

TEST_CASE("misclassification of the best forest") {
    const auto& cm = published::kExperiments[5].cm;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", misclassification_rate(cm));
    CHECK(std::string(buf) == published::kRfSelectedMisclassification);
    CHECK(accuracy(cm) + misclassification_rate(cm) == Approx(100.0));
}
