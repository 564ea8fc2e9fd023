#include <doctest.h>

#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "heartml/info.hpp"
#include "heartml/rng.hpp"
#include "heartml/stats.hpp"

using namespace heartml;
using doctest::Approx;

namespace {

double su_of(std::vector<std::int32_t> a, std::vector<std::int32_t> b) {
    std::int32_t la = 0, lb = 0;
    for (auto x : a) la = std::max(la, x + 1);
    for (auto x : b) lb = std::max(lb, x + 1);
    return symmetric_uncertainty(a, static_cast<std::size_t>(la), b, static_cast<std::size_t>(lb));
}

}  // namespace

TEST_CASE("entropy") {
    const double fair[] = {2, 2};
    CHECK(entropy(fair) == Approx(1.0));
    const double skew[] = {1, 3};
    // -(1/4 log2 1/4 + 3/4 log2 3/4) = 0.5 + 0.311278
    CHECK(entropy(skew) == Approx(0.8112781245).epsilon(1e-10));
    const double pure[] = {0, 5};
    CHECK(entropy(pure) == 0.0);
    const double none[] = {0, 0};
    CHECK(entropy(none) == 0.0);
    const double four[] = {1, 1, 1, 1};
    CHECK(entropy(four) == Approx(2.0));
    // 9/14 vs 5/14, the classic 14-row weather table: 0.940286
    const double weather[] = {9, 5};
    CHECK(entropy(weather) == Approx(0.9402859587).epsilon(1e-10));
}

TEST_CASE("symmetric uncertainty worked values") {
    CHECK(su_of({0, 0, 1, 1}, {0, 1, 0, 1}) == Approx(0.0));
    CHECK(su_of({0, 0, 1, 1}, {0, 0, 1, 1}) == Approx(1.0));
    // H(a)=1, H(b)=0.8113, H(a,b)=1.5, IG=0.3113
    CHECK(su_of({0, 0, 1, 1}, {0, 1, 1, 1}) == Approx(0.3437).epsilon(5e-5));
    CHECK(su_of({0, 0, 1, 1}, {0, 1, 1, 1}) == Approx(2.0 * 0.311278124459 / 1.811278124459).epsilon(1e-10));
    // both constant
    CHECK(su_of({0, 0, 0}, {1, 1, 1}) == 0.0);
    // one constant
    CHECK(su_of({0, 1, 0}, {0, 0, 0}) == 0.0);
    // exact product distribution of a 3-level and 2-level variable
    CHECK(su_of({0, 0, 1, 1, 2, 2}, {0, 1, 0, 1, 0, 1}) == Approx(0.0));
}

TEST_CASE("symmetric uncertainty excludes missing pairwise") {
    CHECK(su_of({0, 0, 1, 1, -1, 0}, {0, 0, 1, 1, 0, -1}) == Approx(1.0));
    CHECK(symmetric_uncertainty(std::vector<std::int32_t>{-1, -1}, 2, std::vector<std::int32_t>{0, 1}, 2) == 0.0);
}

TEST_CASE("symmetric uncertainty properties") {
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        const auto n = 1 + rng.below(40);
        const auto la = 1 + rng.below(4), lb = 1 + rng.below(4);
        std::vector<std::int32_t> a(n), b(n);
        for (std::size_t r = 0; r < n; ++r) {
            a[r] = rng.below(10) == 0 ? -1 : static_cast<std::int32_t>(rng.below(la));
            b[r] = rng.below(10) == 0 ? -1 : static_cast<std::int32_t>(rng.below(lb));
        }
        const double ab = symmetric_uncertainty(a, la, b, lb);
        const double ba = symmetric_uncertainty(b, lb, a, la);
        CHECK(ab == Approx(ba).epsilon(1e-12));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0 + 1e-12);
        // self-correlation is 1 unless the column is constant
        const double aa = symmetric_uncertainty(a, la, a, la);
        CHECK((aa == Approx(1.0) || aa == 0.0));
    }
}

TEST_CASE("mutual information of a contingency table") {
    ContingencyTable t(2, 2);
    t.add(0, 0, 3);
    t.add(1, 1, 3);
    CHECK(t.mutual_information() == Approx(1.0));
    CHECK(t.total() == 6.0);
    CHECK(t.row_totals() == std::vector<double>{3, 3});
}

TEST_CASE("normal quantile") {
    boost::math::normal n;
    for (double p : {1e-10, 1e-4, 0.025, 0.25, 0.5, 0.75, 0.975, 0.9999, 1 - 1e-10})
        CHECK(stats::normal_quantile(p) == Approx(boost::math::quantile(n, p)).epsilon(1e-12));
    CHECK(stats::normal_quantile(0.75) == Approx(0.6744897501960817).epsilon(1e-13));
}

TEST_CASE("incomplete beta against an independent implementation") {
    Rng rng(11);
    for (int i = 0; i < 400; ++i) {
        const double a = 0.5 + rng.uniform() * 600.0;
        const double b = 0.5 + rng.uniform() * 600.0;
        const double x = rng.uniform();
        CHECK(stats::incomplete_beta(x, a, b) == Approx(boost::math::ibeta(a, b, x)).epsilon(1e-9).scale(1.0));
    }
    CHECK(stats::incomplete_beta(0.0, 2, 3) == 0.0);
    CHECK(stats::incomplete_beta(1.0, 2, 3) == 1.0);
    // I_x(1,1) = x
    CHECK(stats::incomplete_beta(0.3, 1, 1) == Approx(0.3));
}

TEST_CASE("beta quantile") {
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const double a = 1.0 + std::floor(rng.uniform() * 500.0);
        const double b = 1.0 + std::floor(rng.uniform() * 500.0);
        const double p = 0.001 + 0.998 * rng.uniform();
        CHECK(stats::beta_quantile(p, a, b) == Approx(boost::math::ibeta_inv(a, b, p)).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("pessimistic error estimate") {
    // zero errors: the bound solves (1-U)^n = cf
    CHECK(stats::pessimistic_errors(6, 0, 0.25) == Approx(6 * (1 - std::pow(0.25, 1.0 / 6))).epsilon(1e-12));
    CHECK(stats::pessimistic_errors(6, 0, 0.25) == Approx(1.2378).epsilon(1e-4));

    // one or more errors: Wilson-style upper bound with a continuity correction
    auto upper = [](double n, double e, double cf) {
        const double z = boost::math::quantile(boost::math::normal(), 1 - cf);
        const double f = (e + 0.5) / n;
        return n * (f + z * z / (2 * n) + z * std::sqrt(f / n - f * f / n + z * z / (4 * n * n))) / (1 + z * z / n);
    };
    for (double n : {5.0, 16.0, 100.0})
        for (double e : {1.0, 2.0, 3.0})
            CHECK(stats::pessimistic_errors(n, e, 0.25) == Approx(upper(n, e, 0.25)).epsilon(1e-10));

    // fractional error counts interpolate between 0 and 1
    const double lo = stats::pessimistic_errors(10, 0, 0.25), hi = stats::pessimistic_errors(10, 1, 0.25);
    CHECK(stats::pessimistic_errors(10, 0.5, 0.25) == Approx((lo + hi) / 2));

    // bounded by n, monotone in errors, larger for smaller cf
    CHECK(stats::pessimistic_errors(3, 3, 0.25) == 3.0);
    double prev = 0;
    for (double e = 0; e <= 20; e += 1) {
        const double v = stats::pessimistic_errors(20, e, 0.25);
        CHECK(v >= prev);
        CHECK(v >= e);
        CHECK(v <= 20.0 + 1e-9);
        prev = v;
    }
    CHECK(stats::pessimistic_errors(20, 2, 0.1) > stats::pessimistic_errors(20, 2, 0.25));
    CHECK(stats::pessimistic_errors(0, 0, 0.25) == 0.0);
}
